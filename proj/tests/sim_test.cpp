#include <doctest.h>

#include <cmath>
#include <map>

#include "ftqc/entfid.hpp"
#include "ftqc/serialize.hpp"
#include "ftqc/sim.hpp"
#include "ftqc/steane.hpp"

using namespace ftqc;

namespace {

// Applies a 7-qubit Pauli (as a matrix action) to a dense leaf state over
// exactly those qubits and returns <psi| P |psi>.
cplx pauli_expectation(const DenseLeaf& leaf, const PauliString& p) {
  REQUIRE(leaf.qubit_order.size() == p.num_qubits());
  // Map qubit id -> bit position in the leaf.
  std::vector<int> pos(p.num_qubits(), -1);
  for (size_t k = 0; k < leaf.qubit_order.size(); ++k)
    pos[leaf.qubit_order[k]] = (int)k;
  cplx acc = 0;
  cplx phase = std::pow(cplx(0, 1), p.phase);
  for (size_t i = 0; i < leaf.amps.size(); ++i) {
    // P|i> = phase * (-1)^(z.i) |i ^ x>
    size_t j = i;
    cplx v = phase;
    for (size_t q = 0; q < p.num_qubits(); ++q) {
      size_t bit = size_t(1) << pos[q];
      if (p.z[q] && (i & bit)) v = -v;
      if (p.x[q]) j ^= bit;
    }
    acc += std::conj(leaf.amps[j]) * v * leaf.amps[i];
  }
  return acc;
}

}  // namespace

TEST_CASE("bell circuit gives equal bits, H gives a fair coin") {
  CircuitBuilder b(2, 0);
  b.gate(GateKind::H, 0);
  b.gate(GateKind::CNOT, 0, 1);
  int m0 = b.measure(0);
  int m1 = b.measure(1);
  Circuit c = b.take();
  RunOptions opt;
  opt.shots = 10000;
  opt.seed = 7;
  long ones = 0;
  for (auto& r : run(c, opt)) {
    CHECK(r.bits[m0] == r.bits[m1]);
    ones += r.bits[m0];
  }
  // 3 sigma around 1/2
  double sigma = std::sqrt(0.25 / 10000);
  CHECK(std::abs(ones / 10000.0 - 0.5) < 3 * sigma);
}

TEST_CASE("determinism across thread counts, both backends") {
  CircuitBuilder b(3, 0);
  b.gate(GateKind::H, 0);
  b.gate(GateKind::CNOT, 0, 1);
  b.measure(0);
  b.measure(1);
  b.gate(GateKind::H, 2);
  b.measure(2);
  Circuit c = b.take();
  for (auto kind : {BackendKind::Dense, BackendKind::Frame}) {
    RunOptions a;
    a.backend = kind;
    a.shots = 500;
    a.seed = 11;
    a.noise.p1 = a.noise.p2 = 0.01;
    a.noise.pm = 0.005;
    RunOptions b4 = a;
    b4.threads = 4;
    auto ra = run(c, a), rb = run(c, b4);
    REQUIRE(ra.size() == rb.size());
    for (size_t i = 0; i < ra.size(); ++i) {
      CHECK(ra[i].bits == rb[i].bits);
      CHECK(ra[i].discarded == rb[i].discarded);
    }
  }
}

TEST_CASE("statevector_of basics") {
  // Empty circuit -> |0...0> on no active qubits.
  Circuit empty;
  empty.num_qubits = 3;
  auto leaf = statevector_of(empty, {});
  CHECK(leaf.amps.size() == 1);
  CHECK(std::abs(leaf.amps[0] - cplx(1, 0)) < 1e-12);

  // X-basis measurement of |0>: branch outcome 0 has weight 1/2.
  CircuitBuilder b(1, 0);
  b.gate(GateKind::H, 0);
  int m = b.measure(0);
  auto l2 = statevector_of(b.take(), {{m, 0}});
  CHECK(std::abs(l2.weight - 0.5) < 1e-12);

  // Zero-amplitude branch throws.
  CircuitBuilder b3(1, 0);
  int m3 = b3.measure(0);
  CHECK_THROWS(statevector_of(b3.take(), {{m3, 1}}));
}

TEST_CASE("ideal encoded zero is stabilized by all generators and Z-bar") {
  CircuitBuilder b(7, 0);
  b.ideal_prep_zero({0, 1, 2, 3, 4, 5, 6});
  auto leaf = statevector_of(b.take(), {});
  CHECK(leaf.amps.size() == 128);
  for (int r = 0; r < 3; ++r) {
    PauliString gx(7), gz(7);
    for (int ccol = 0; ccol < 7; ++ccol) {
      gx.x[ccol] = kCheckMatrix[r][ccol];
      gz.z[ccol] = kCheckMatrix[r][ccol];
    }
    CHECK(std::abs(pauli_expectation(leaf, gx) - cplx(1, 0)) < 1e-10);
    CHECK(std::abs(pauli_expectation(leaf, gz) - cplx(1, 0)) < 1e-10);
  }
  PauliString zbar(7);
  for (int q = 0; q < 7; ++q) zbar.z[q] = 1;
  CHECK(std::abs(pauli_expectation(leaf, zbar) - cplx(1, 0)) < 1e-10);
}

TEST_CASE("dense norm stays 1 through a deep random circuit") {
  CounterRng rng(5, 0);
  DenseBackend backend(6, 24);
  CircuitBuilder b(6, 0);
  for (int i = 0; i < 200; ++i) {
    int q = (int)rng.below(6);
    switch (rng.below(5)) {
      case 0: b.gate(GateKind::H, q); break;
      case 1: b.gate(GateKind::T, q); break;
      case 2: b.gate(GateKind::RY, rng.uniform(), q); break;
      case 3: {
        int p = (int)rng.below(6);
        if (p != q) b.gate(GateKind::CNOT, p, q);
        break;
      }
      case 4: b.measure(q); break;
    }
  }
  Circuit c = b.take();
  CounterRng shot_rng(1, 0);
  run_one(c, NoiseModel{}, backend, shot_rng);
  CHECK(std::abs(backend.state().norm() - 1.0) < 1e-12);
}

TEST_CASE("frame backend matches dense on random Clifford circuits") {
  // 50 random circuits, <=6 qubits, <=40 gates, with noise; joint output
  // distribution TV distance < 0.02 at 1e5 shots.
  CounterRng gen(31337, 0);
  for (int trial = 0; trial < 50; ++trial) {
    int nq = 3 + (int)gen.below(4);
    CircuitBuilder b(nq, 0);
    int ngates = 10 + (int)gen.below(31);
    for (int i = 0; i < ngates; ++i) {
      int q = (int)gen.below(nq);
      switch (gen.below(7)) {
        case 0: b.gate(GateKind::H, q); break;
        case 1: b.gate(GateKind::S, q); break;
        case 2: b.gate(GateKind::SX, q); break;
        case 3: b.gate(GateKind::X, q); break;
        case 4: case 5: {
          int p = (int)gen.below(nq);
          if (p != q) b.gate(gen.below(2) ? GateKind::CNOT : GateKind::CZ, p, q);
          break;
        }
        case 6: b.reset(q); break;
      }
    }
    std::vector<int> outs;
    for (int q = 0; q < nq; ++q) outs.push_back(b.measure(q));
    Circuit c = b.take();

    RunOptions opt;
    opt.shots = 100000;
    opt.seed = 1000 + trial;
    opt.noise.p1 = 0.002;
    opt.noise.p2 = 0.01;
    opt.noise.pm = 0.003;
    opt.backend = BackendKind::Dense;
    auto rd = run(c, opt);
    opt.backend = BackendKind::Frame;
    opt.seed += 50000;  // independent sampling noise
    auto rf = run(c, opt);

    std::map<int, double> pd, pf;
    for (auto& r : rd) {
      int key = 0;
      for (size_t k = 0; k < outs.size(); ++k) key |= r.bits[outs[k]] << k;
      pd[key] += 1.0 / opt.shots;
    }
    for (auto& r : rf) {
      int key = 0;
      for (size_t k = 0; k < outs.size(); ++k) key |= r.bits[outs[k]] << k;
      pf[key] += 1.0 / opt.shots;
    }
    double tv = 0;
    for (int key = 0; key < (1 << nq); ++key) {
      double a = pd.count(key) ? pd[key] : 0.0;
      double bb = pf.count(key) ? pf[key] : 0.0;
      tv += std::abs(a - bb);
    }
    tv /= 2;
    CAPTURE(trial);
    CHECK(tv < 0.02);
  }
}

TEST_CASE("noise injection rate matches p2*alpha") {
  // One CNOT on |00>; any error with an X/Y component on either qubit flips
  // a readout: 12 of the 15 two-qubit Paulis. Expect p2 * 12/15.
  CircuitBuilder b(2, 0);
  b.gate(GateKind::CNOT, 0, 1);
  int m0 = b.measure(0), m1 = b.measure(1);
  Circuit c = b.take();
  RunOptions opt;
  opt.backend = BackendKind::Frame;
  opt.shots = 1000000;
  opt.seed = 9;
  opt.noise.p2 = 0.05;
  opt.noise.alpha = 1.0;
  long hits = 0;
  for (auto& r : run(c, opt))
    if (r.bits[m0] || r.bits[m1]) hits++;
  double want = 0.05 * 12.0 / 15.0;
  double sigma = std::sqrt(want * (1 - want) / opt.shots);
  CHECK(std::abs(hits / 1e6 - want) < 3 * sigma);
}

TEST_CASE("rus attempt counts are truncated geometric") {
  // Body fails with probability 1/2 per attempt; limit 3.
  CircuitBuilder b(1, 0);
  b.rus(3, [&]() -> std::vector<std::pair<int, int>> {
    b.reset(0);
    b.gate(GateKind::H, 0);
    int f = b.measure(0);
    return {{f, 0}};
  });
  Circuit c = b.take();
  RunOptions opt;
  opt.shots = 40000;
  opt.seed = 21;
  long att[4] = {0, 0, 0, 0};
  long discards = 0;
  for (auto& r : run(c, opt)) {
    if (r.discarded) discards++;
    REQUIRE(r.rus_attempts.size() == 1);
    att[r.rus_attempts[0].second]++;
  }
  double n = (double)opt.shots;
  // P(attempts=1)=1/2, =2 ->1/4, =3 ->1/4 (success or exhausted)
  CHECK(std::abs(att[1] / n - 0.5) < 3 * std::sqrt(0.25 / n));
  CHECK(std::abs(att[2] / n - 0.25) < 3 * std::sqrt(0.1875 / n));
  double q3 = 1.0 / 8;  // discard fraction = q^r
  CHECK(std::abs(discards / n - q3) < 3 * std::sqrt(q3 * (1 - q3) / n));
}

TEST_CASE("entanglement fidelity basics") {
  PauliChannel1 ident;
  CHECK(entanglement_fidelity_six_state(ident, 1) == doctest::Approx(1.0));
  PauliChannel1 depol{0.25, 0.25, 0.25, 0.25};
  CHECK(entanglement_fidelity_six_state(depol, 1) == doctest::Approx(0.25));
  CHECK(entanglement_fidelity_bell(depol, 3) == doctest::Approx(0.25));

  // Channel-as-circuit: for a unitary channel F = |tr(U)/2|^2.
  CircuitBuilder b(1, 0);
  b.gate(GateKind::RZ, 0.7, 0);
  double f = channel_entanglement_fidelity(b.take(), 1);
  cplx tr = std::exp(cplx(0, -0.35)) + std::exp(cplx(0, 0.35));
  double want = std::norm(tr / 2.0);
  CHECK(f == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("six-state estimator equals bell formula on 100 random channels") {
  CounterRng rng(404, 0);
  for (int t = 0; t < 100; ++t) {
    double a = rng.uniform(), b = rng.uniform(), c = rng.uniform(),
           d = rng.uniform();
    double s = a + b + c + d;
    PauliChannel1 ch{a / s, b / s, c / s, d / s};
    int reps = 1 + (int)rng.below(4);
    double f6 = entanglement_fidelity_six_state(ch, reps);
    double fb = entanglement_fidelity_bell(ch, reps);
    CHECK(std::abs(f6 - fb) < 1e-9);
  }
}

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "doctest.h"
#include "ftqc/circuit.hpp"
#include "ftqc/dense_sim.hpp"
#include "ftqc/gadgets.hpp"
#include "ftqc/gates.hpp"

using namespace ftqc;

namespace {

using vec = std::vector<cplx>;

constexpr double kPi = 3.14159265358979323846;

// Pins every classical bit to zero: the noiseless accepted branch of each
// gadget (all verification, syndrome and decode bits vanish).
std::map<int, int> all_zero_bits(const Circuit& c) {
  std::map<int, int> m;
  for (int i = 0; i < c.num_bits; ++i) m[i] = 0;
  return m;
}

// Amplitudes reindexed so the surviving qubit with the j-th smallest id sits
// at bit j.  Gadget blocks are allocated with ascending contiguous ids, so
// this lines block position j up with bit j.
vec ordered_vec(const DenseLeaf& leaf) {
  int n = (int)leaf.qubit_order.size();
  std::vector<int> sorted = leaf.qubit_order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> pos(n);  // bit in leaf.amps -> bit in output
  for (int k = 0; k < n; ++k) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(),
                               leaf.qubit_order[k]);
    pos[k] = (int)(it - sorted.begin());
  }
  vec out(leaf.amps.size());
  for (size_t i = 0; i < leaf.amps.size(); ++i) {
    size_t j = 0;
    for (int k = 0; k < n; ++k)
      if ((i >> k) & 1) j |= size_t{1} << pos[k];
    out[j] = leaf.amps[i];
  }
  return out;
}

// Fidelity |<a|b>|^2 with both sides normalized (global phase ignored).
double fidelity(const vec& a, const vec& b) {
  REQUIRE(a.size() == b.size());
  cplx ip = 0;
  double na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ip += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  return std::norm(ip) / (na * nb);
}

// Encoded computational basis, from the idealized preparation primitive.
const vec& logical_zero() {
  static const vec v0 = [] {
    CircuitBuilder b;
    auto q = b.qubits(7);
    b.ideal_prep_zero(q);
    return ordered_vec(statevector_of(b.take(), {}));
  }();
  return v0;
}

const vec& logical_one() {
  static const vec v1 = [] {
    vec v(128);
    // X on positions {0,1,2} is a logical X representative.
    for (int i = 0; i < 128; ++i) v[i ^ 0b0000111] = logical_zero()[i];
    return v;
  }();
  return v1;
}

vec logical_state(cplx a0, cplx a1) {
  vec v(128);
  for (int i = 0; i < 128; ++i)
    v[i] = a0 * logical_zero()[i] + a1 * logical_one()[i];
  return v;
}

// Folds a list of logical gates over |0>, giving the target amplitudes.
std::pair<cplx, cplx> fold_logical(const std::vector<GateKind>& gates) {
  cplx a0 = 1, a1 = 0;
  for (GateKind g : gates) {
    Mat2 m = gate_matrix1(g);
    cplx b0 = m[0] * a0 + m[1] * a1;
    cplx b1 = m[2] * a0 + m[3] * a1;
    a0 = b0;
    a1 = b1;
  }
  return {a0, a1};
}

Block make_block(CircuitBuilder& b) {
  Block q;
  for (auto& x : q) x = b.qubit();
  return q;
}

void ideal_prep(CircuitBuilder& b, const Block& q) {
  b.ideal_prep_zero(std::vector<int>(q.begin(), q.end()));
}

}  // namespace

TEST_CASE("catalogue gadgets validate") {
  const std::pair<const char*, const char*> entries[] = {
      {"prep_zero", ""},        {"prep_plus", ""},
      {"prep_h", "encoding"},   {"prep_h", "specialized"},
      {"prep_h", "hardware"},   {"prep_t", ""},
      {"t_gate", "t-bare"},     {"t_gate", "t-swap"},
      {"qec", "flag-ft"},       {"qec", "steane-bare"},
      {"qec", "steane-swap"},   {"qec", "knill"},
      {"logical_measure", ""},  {"logical_measure", "x"},
      {"transversal", "h"},     {"transversal", "s"},
      {"transversal", "sdg"},   {"transversal", "x"},
      {"transversal", "y"},     {"transversal", "z"},
      {"transversal", "cnot"},  {"transversal", "cz"},
      {"pauli_measurement", ""},
  };
  for (auto [kind, variant] : entries) {
    CAPTURE(kind);
    CAPTURE(variant);
    Gadget g = gadget(kind, variant);
    auto errs = validate(g.circuit);
    for (const auto& e : errs) CAPTURE(e);
    CHECK(errs.empty());
    CHECK(g.output_block[6] < g.circuit.num_qubits);
  }
  CHECK_THROWS_AS((void)gadget("bogus"), std::invalid_argument);
  CHECK_THROWS_AS((void)gadget("qec", "bogus"), std::invalid_argument);
}

TEST_CASE("flagged |0> preparation lands on the codeword state") {
  Gadget g = gadget("prep_zero");
  auto leaf = statevector_of(g.circuit, all_zero_bits(g.circuit));
  CHECK(fidelity(ordered_vec(leaf), logical_zero()) == doctest::Approx(1.0));

  Gadget gp = gadget("prep_plus");
  auto leafp = statevector_of(gp.circuit, all_zero_bits(gp.circuit));
  const double s = 1 / std::sqrt(2.0);
  CHECK(fidelity(ordered_vec(leafp), logical_state(s, s)) ==
        doctest::Approx(1.0));
}

TEST_CASE("every |H> preparation variant yields the Hadamard eigenstate") {
  const vec target =
      logical_state(std::cos(kPi / 8), std::sin(kPi / 8));
  for (const char* variant : {"encoding", "specialized", "hardware"}) {
    CAPTURE(variant);
    Gadget g = gadget("prep_h", variant);
    auto leaf = statevector_of(g.circuit, all_zero_bits(g.circuit));
    CHECK(fidelity(ordered_vec(leaf), target) == doctest::Approx(1.0));
    // The accepted branch of a noiseless run carries the full weight: the
    // logical-H measurement succeeds with certainty, no retries happen.
    CHECK(leaf.weight == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("|T> preparation matches the magic-state injection convention") {
  Gadget g = gadget("prep_t");
  auto leaf = statevector_of(g.circuit, all_zero_bits(g.circuit));
  const double s = 1 / std::sqrt(2.0);
  const vec target = logical_state(s, s * std::polar(1.0, kPi / 4));
  CHECK(fidelity(ordered_vec(leaf), target) == doctest::Approx(1.0));

  // Cross-check against direct encoding of the injected magic state.
  CircuitBuilder b;
  Block q = make_block(b);
  emit_encode_state(b, q, [&](int in) { b.gate(GateKind::MagicInit, in); });
  auto ref = statevector_of(b.take(), {});
  CHECK(fidelity(ordered_vec(ref), target) == doctest::Approx(1.0));
}

TEST_CASE("state-prep circuits meet the gate and ancilla budgets") {
  Gadget hw = gadget("prep_h", "hardware");
  GateCensus chw = gate_census_min(hw.circuit);
  CHECK(chw.two_qubit_gates <= 30);
  CHECK(chw.two_qubit_depth <= 9);
  CHECK(hw.ancillas.size() == 4);

  Gadget sp = gadget("prep_h", "specialized");
  GateCensus csp = gate_census_min(sp.circuit);
  // Dropping the hardware flag saves exactly two coupling gates and one
  // ancilla.
  CHECK(csp.two_qubit_gates == chw.two_qubit_gates - 2);
  CHECK(sp.ancillas.size() == 3);
}

TEST_CASE("teleported T equals the logical T on Pauli eigenstates") {
  const std::vector<std::vector<GateKind>> inputs = {
      {},
      {GateKind::X},
      {GateKind::H},
      {GateKind::H, GateKind::S},
      {GateKind::X, GateKind::H},
      {GateKind::X, GateKind::H, GateKind::S},
  };
  for (const char* variant : {"t-bare", "t-swap"}) {
    for (size_t i = 0; i < inputs.size(); ++i) {
      CAPTURE(variant);
      CAPTURE(i);
      CircuitBuilder b;
      Block data = make_block(b), anc = make_block(b);
      ideal_prep(b, data);
      for (GateKind g : inputs[i]) emit_logical_1q(b, g, data);
      emit_encode_state(b, anc,
                        [&](int in) { b.gate(GateKind::MagicInit, in); });
      if (std::string(variant) == "t-bare")
        emit_t_bare(b, data, anc);
      else
        emit_t_swap(b, data, anc);
      Circuit c = b.take();
      auto [a0, a1] = fold_logical(inputs[i]);
      const vec target = logical_state(a0, a1 * std::polar(1.0, kPi / 4));
      auto leaf = statevector_of(c, all_zero_bits(c));
      CHECK(fidelity(ordered_vec(leaf), target) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("teleported T correction branch also lands on the logical T") {
  // Force the measured block onto the odd codeword 1110000 so the decoded
  // bit is 1 and the conditional correction fires.
  for (const char* variant : {"t-bare", "t-swap"}) {
    CAPTURE(variant);
    CircuitBuilder b;
    Block data = make_block(b), anc = make_block(b);
    ideal_prep(b, data);
    emit_logical_1q(b, GateKind::H, data);
    emit_encode_state(b, anc,
                      [&](int in) { b.gate(GateKind::MagicInit, in); });
    std::array<int, 7> raw{};
    if (std::string(variant) == "t-bare") {
      // Re-emit the body so the raw measurement bits are known.
      emit_logical_cnot(b, data, anc);
      int m = emit_logical_measure_z(b, anc, &raw);
      b.cond({{m, 1}}, [&] { emit_logical_1q(b, GateKind::S, data); });
    } else {
      emit_logical_cnot(b, anc, data);
      int m = emit_logical_measure_z(b, data, &raw);
      b.cond({{m, 1}}, [&] {
        emit_logical_1q(b, GateKind::X, anc);
        emit_logical_1q(b, GateKind::S, anc);
      });
    }
    std::map<int, int> branch;
    for (int j = 0; j < 7; ++j) branch[raw[j]] = j < 3 ? 1 : 0;
    const double s = 1 / std::sqrt(2.0);
    const vec target = logical_state(s, s * std::polar(1.0, kPi / 4));
    auto leaf = statevector_of(b.take(), branch);
    CHECK(fidelity(ordered_vec(leaf), target) == doctest::Approx(1.0));
  }
}

TEST_CASE("error-correction gadgets preserve a non-stabilizer state") {
  const double s = 1 / std::sqrt(2.0);
  const vec target = logical_state(s, s * std::polar(1.0, kPi / 4));
  for (const char* variant :
       {"flag-ft", "steane-bare", "steane-swap", "knill"}) {
    CAPTURE(variant);
    CircuitBuilder b;
    Block data = make_block(b);
    emit_encode_state(b, data,
                      [&](int in) { b.gate(GateKind::MagicInit, in); });
    std::string v = variant;
    if (v == "flag-ft") {
      int a1 = b.qubit(), a2 = b.qubit(), a3 = b.qubit();
      emit_qec_flag_ft(b, data, a1, a2, a3);
    } else if (v == "steane-bare") {
      Block anc = make_block(b);
      emit_qec_steane_bare(b, data, anc, b.qubit(), b.qubit(), 3);
    } else if (v == "steane-swap") {
      Block anc = make_block(b);
      emit_qec_steane_swap(b, data, anc, b.qubit(), b.qubit(), 3);
    } else {
      Block anc_a = make_block(b), anc_b = make_block(b);
      emit_qec_knill(b, data, anc_a, anc_b, b.qubit(), b.qubit(), 3);
    }
    Circuit c = b.take();
    auto leaf = statevector_of(c, all_zero_bits(c));
    CHECK(fidelity(ordered_vec(leaf), target) == doctest::Approx(1.0));
  }
}

TEST_CASE("teleporting QEC applies the logical X correction when decoding 1") {
  // Pin the swap round's data readout to the odd word 1110000: the decoded
  // outcome 1 must trigger a logical X so the output state is unchanged.
  CircuitBuilder b;
  Block data = make_block(b), anc = make_block(b);
  int flag = b.qubit();
  emit_encode_state(b, data,
                    [&](int in) { b.gate(GateKind::MagicInit, in); });
  emit_prep_zero_ft(b, anc, flag, b.qubit(), 3);
  emit_logical_1q(b, GateKind::H, anc);
  emit_logical_cnot(b, anc, data);
  std::array<int, 7> raw{};
  int m1 = emit_logical_measure_z(b, data, &raw);
  b.cond({{m1, 1}}, [&] { emit_logical_1q(b, GateKind::X, anc); });
  std::map<int, int> branch = {{m1, 1}};
  Circuit c = b.take();
  for (int i = 0; i < c.num_bits; ++i)
    if (!branch.count(i)) branch[i] = 0;
  for (int j = 0; j < 3; ++j) branch[raw[j]] = 1;
  const double s = 1 / std::sqrt(2.0);
  const vec target = logical_state(s, s * std::polar(1.0, kPi / 4));
  auto leaf = statevector_of(c, branch);
  CHECK(fidelity(ordered_vec(leaf), target) == doctest::Approx(1.0));
}

TEST_CASE("transversal single-qubit Cliffords act as the logical gate") {
  const double s = 1 / std::sqrt(2.0);
  struct Case {
    std::vector<GateKind> gates;
    cplx a0, a1;
  };
  const std::vector<Case> cases = {
      {{GateKind::H}, s, s},
      {{GateKind::H, GateKind::S}, s, cplx(0, 1) * s},
      {{GateKind::H, GateKind::Sdg}, s, cplx(0, -1) * s},
      {{GateKind::H, GateKind::S, GateKind::S}, s, -s},
      {{GateKind::X}, 0, 1},
      {{GateKind::H, GateKind::Z}, s, -s},
      {{GateKind::X, GateKind::Y}, cplx(0, -1), 0},
  };
  for (size_t i = 0; i < cases.size(); ++i) {
    CAPTURE(i);
    CircuitBuilder b;
    Block q = make_block(b);
    ideal_prep(b, q);
    for (GateKind g : cases[i].gates) emit_logical_1q(b, g, q);
    auto leaf = statevector_of(b.take(), {});
    CHECK(fidelity(ordered_vec(leaf),
                   logical_state(cases[i].a0, cases[i].a1)) ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("transversal block CNOT and CZ act on the logical pair") {
  const double s = 1 / std::sqrt(2.0);
  // |+>|0> -> Bell pair under CNOT.
  {
    CircuitBuilder b;
    Block q1 = make_block(b), q2 = make_block(b);
    ideal_prep(b, q1);
    ideal_prep(b, q2);
    emit_logical_1q(b, GateKind::H, q1);
    emit_logical_cnot(b, q1, q2);
    auto got = ordered_vec(statevector_of(b.take(), {}));
    vec want(1 << 14);
    for (int i = 0; i < 128; ++i)
      for (int j = 0; j < 128; ++j)
        want[(size_t)j << 7 | i] =
            s * (logical_zero()[i] * logical_zero()[j] +
                 logical_one()[i] * logical_one()[j]);
    CHECK(fidelity(got, want) == doctest::Approx(1.0));
  }
  // |+>|+> -> (|0+> + |1->)/sqrt(2) under CZ.
  {
    CircuitBuilder b;
    Block q1 = make_block(b), q2 = make_block(b);
    ideal_prep(b, q1);
    ideal_prep(b, q2);
    emit_logical_1q(b, GateKind::H, q1);
    emit_logical_1q(b, GateKind::H, q2);
    emit_logical_cz(b, q1, q2);
    auto got = ordered_vec(statevector_of(b.take(), {}));
    vec want(1 << 14);
    for (int i = 0; i < 128; ++i)
      for (int j = 0; j < 128; ++j)
        want[(size_t)j << 7 | i] =
            0.5 * (logical_zero()[i] *
                       (logical_zero()[j] + logical_one()[j]) +
                   logical_one()[i] *
                       (logical_zero()[j] - logical_one()[j]));
    CHECK(fidelity(got, want) == doctest::Approx(1.0));
  }
}

TEST_CASE("transversal readout decodes codewords and corrects weight-1 flips")
{
  // Logical one: raw words are odd-weight codewords.
  CircuitBuilder b;
  Block q = make_block(b);
  ideal_prep(b, q);
  emit_logical_1q(b, GateKind::X, q);
  std::array<int, 7> raw{};
  int m = emit_logical_measure_z(b, q, &raw);
  Circuit c = b.take();

  // Branch on the minimal representative 1110000.
  std::map<int, int> branch;
  for (int j = 0; j < 7; ++j) branch[raw[j]] = j < 3 ? 1 : 0;
  auto leaf = statevector_of(c, branch);
  CHECK(leaf.bits[m] == 1);

  // Branch on its complement 1111111 (stabilizer offset, same logical).
  for (int j = 0; j < 7; ++j) branch[raw[j]] = 1;
  leaf = statevector_of(c, branch);
  CHECK(leaf.bits[m] == 1);
}

TEST_CASE("syndrome bits recover the position of a single flip") {
  for (int p = 0; p < 7; ++p) {
    CAPTURE(p);
    CircuitBuilder b;
    auto qs = b.qubits(7);
    for (int q : qs) b.reset(q);
    b.gate(GateKind::X, qs[p]);
    std::array<int, 7> raw{};
    for (int j = 0; j < 7; ++j) raw[j] = b.measure(qs[j]);
    auto syn = emit_syndrome_bits(b, raw);
    auto leaf = statevector_of(b.take(), {});
    int v = leaf.bits[syn[0]] << 2 | leaf.bits[syn[1]] << 1 |
            leaf.bits[syn[2]];
    CHECK(v == p + 1);
  }
}

TEST_CASE("X-basis readout distinguishes the logical plus state") {
  CircuitBuilder b;
  Block q = make_block(b);
  ideal_prep(b, q);
  emit_logical_1q(b, GateKind::H, q);
  emit_logical_1q(b, GateKind::Z, q);  // |->
  std::array<int, 7> raw{};
  int m = emit_logical_measure_x(b, q, &raw);
  Circuit c = b.take();
  std::map<int, int> branch;
  for (int j = 0; j < 7; ++j) branch[raw[j]] = j < 3 ? 1 : 0;
  auto leaf = statevector_of(c, branch);
  CHECK(leaf.bits[m] == 1);
}

TEST_CASE("bare stabilizer readout reports +1 on the codespace") {
  Gadget g = gadget("pauli_measurement");
  auto leaf = statevector_of(g.circuit, all_zero_bits(g.circuit));
  REQUIRE(g.logical_bits.size() == 1);
  CHECK(leaf.bits[g.logical_bits[0]] == 0);
  CHECK(fidelity(ordered_vec(leaf), logical_zero()) == doctest::Approx(1.0));
}

#include "ftqc/entfid.hpp"

#include <stdexcept>
#include <vector>

#include "ftqc/dense_sim.hpp"

namespace ftqc {

namespace {

using M2 = std::array<cplx, 4>;

M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

M2 dag(const M2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

// rho -> sum_k p_k P_k rho P_k
M2 apply_channel(const PauliChannel1& ch, const M2& rho) {
  static const M2 paulis[4] = {
      gate_matrix1(GateKind::I), gate_matrix1(GateKind::X),
      gate_matrix1(GateKind::Y), gate_matrix1(GateKind::Z)};
  const double p[4] = {ch.pi, ch.px, ch.py, ch.pz};
  M2 out{};
  for (int k = 0; k < 4; ++k) {
    M2 t = mul(mul(paulis[k], rho), dag(paulis[k]));
    for (int i = 0; i < 4; ++i) out[i] += p[k] * t[i];
  }
  return out;
}

}  // namespace

double entanglement_fidelity_six_state(const PauliChannel1& ch, int n_reps) {
  static const M2 paulis[3] = {gate_matrix1(GateKind::X),
                               gate_matrix1(GateKind::Y),
                               gate_matrix1(GateKind::Z)};
  double sum = 0;
  for (int p = 0; p < 3; ++p) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      double s = sgn ? -1.0 : 1.0;
      // Projector (I + s P)/2 doubles as the prepared state.
      M2 proj = {0.5 * (cplx(1) + s * paulis[p][0]), 0.5 * s * paulis[p][1],
                 0.5 * s * paulis[p][2], 0.5 * (cplx(1) + s * paulis[p][3])};
      M2 rho = proj;
      for (int k = 0; k < n_reps; ++k) rho = apply_channel(ch, rho);
      M2 t = mul(rho, proj);
      sum += (t[0] + t[3]).real();
    }
  }
  return 0.25 * sum - 0.5;
}

double entanglement_fidelity_bell(const PauliChannel1& ch, int n_reps) {
  // |phi> = (|00> + |11>)/sqrt(2); apply (I (x) C) to its density matrix with
  // the channel acting on the second qubit.
  cplx rho[4][4] = {};
  rho[0][0] = rho[0][3] = rho[3][0] = rho[3][3] = 0.5;
  static const M2 paulis[4] = {
      gate_matrix1(GateKind::I), gate_matrix1(GateKind::X),
      gate_matrix1(GateKind::Y), gate_matrix1(GateKind::Z)};
  const double p[4] = {ch.pi, ch.px, ch.py, ch.pz};
  for (int rep = 0; rep < n_reps; ++rep) {
    cplx next[4][4] = {};
    for (int k = 0; k < 4; ++k) {
      // (I (x) P_k) rho (I (x) P_k)^dag; index = 2*first + second.
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          int a1 = a >> 1, a2 = a & 1, b1 = b >> 1, b2 = b & 1;
          cplx acc = 0;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              acc += paulis[k][a2 * 2 + i] * rho[a1 * 2 + i][b1 * 2 + j] *
                     std::conj(paulis[k][b2 * 2 + j]);
          next[a][b] += p[k] * acc;
        }
      }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) rho[a][b] = next[a][b];
  }
  // <phi| rho |phi>
  cplx f = 0.5 * (rho[0][0] + rho[0][3] + rho[3][0] + rho[3][3]);
  return f.real();
}

double channel_entanglement_fidelity(const Circuit& ch, int n_reps,
                                     int max_active) {
  if (n_reps < 1) throw std::invalid_argument("n_reps must be >= 1");
  // Prefix gates preparing each eigenstate of X, Y, Z (both signs) on qubit
  // 0, plus the matching projector measurement handled as an amplitude sum.
  struct Prep {
    std::vector<GateKind> gates;
  };
  const Prep preps[6] = {
      {{GateKind::H}},                            // |+>
      {{GateKind::X, GateKind::H}},               // |->
      {{GateKind::H, GateKind::S}},               // |+i>
      {{GateKind::X, GateKind::H, GateKind::S}},  // |-i>
      {{}},                                       // |0>
      {{GateKind::X}},                            // |1>
  };
  double sum = 0;
  for (const auto& prep : preps) {
    Circuit c;
    c.num_qubits = ch.num_qubits;
    c.num_bits = ch.num_bits * n_reps + 1;
    for (GateKind g : prep.gates) {
      Instruction in;
      in.kind = InstrKind::Gate;
      in.gate = g;
      in.qubits = {0};
      c.instrs.push_back(in);
    }
    for (int rep = 0; rep < n_reps; ++rep) {
      for (Instruction in : ch.instrs) {
        // Shift measurement bits so repetitions do not collide.
        if (in.kind == InstrKind::Measure) in.bits[0] += rep * ch.num_bits;
        c.instrs.push_back(std::move(in));
      }
    }
    // Rotate the prepared eigenstate back onto |0> and read survival.
    for (auto it = prep.gates.rbegin(); it != prep.gates.rend(); ++it) {
      Instruction in;
      in.kind = InstrKind::Gate;
      in.gate = *it == GateKind::S ? GateKind::Sdg : *it;
      in.qubits = {0};
      c.instrs.push_back(in);
    }
    {
      Instruction in;
      in.kind = InstrKind::Measure;
      in.qubits = {0};
      in.bits = {c.num_bits - 1};
      c.instrs.push_back(in);
    }
    double survive = 0;
    enumerate_branches(
        c, nullptr,
        [&](DenseLeaf& leaf) {
          if (leaf.discarded) return;
          if (leaf.bits.back() == 0) survive += leaf.weight;
        },
        1e-14, max_active);
    sum += survive;
  }
  return 0.25 * sum - 0.5;
}

}  // namespace ftqc

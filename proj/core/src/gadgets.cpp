#include "ftqc/gadgets.hpp"

#include <cmath>
#include <stdexcept>

#include "ftqc/steane.hpp"

namespace ftqc {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Stabilizer generator supports; column j of the check matrix is j+1 in
// binary, so a raw-word syndrome value v points at position v-1.
constexpr std::array<int, 4> kGen1 = {3, 4, 5, 6};
constexpr std::array<int, 4> kGen2 = {1, 2, 5, 6};
constexpr std::array<int, 4> kGen3 = {0, 2, 4, 6};

std::vector<std::pair<int, int>> syndrome_pattern(
    const std::array<int, 3>& s, int v) {
  return {{s[0], (v >> 2) & 1}, {s[1], (v >> 1) & 1}, {s[2], v & 1}};
}

// For syndrome value v apply `pauli` on q[v-1].
void correct_by_syndrome(CircuitBuilder& b, const std::array<int, 3>& s,
                         const Block& q, GateKind pauli) {
  for (int v = 1; v <= 7; ++v) {
    b.cond(syndrome_pattern(s, v), [&] { b.gate(pauli, q[v - 1]); });
  }
}

// Flagged X1/Z2/Z3 extraction round.  a1 reads the X generator on {3,4,5,6};
// a2 and a3 read the Z generators on {1,2,5,6} and {0,2,4,6}.  a1 opens a
// CNOT window around each partner so hook errors on either side are copied
// across and show up in the flags.  Data coupling orders put every dangerous
// two-qubit hook into a signature listed in hook_correction_rows().
void emit_flagged_xzz(CircuitBuilder& b, const Block& q, int a1, int a2,
                      int a3, int x1, int z2, int z3) {
  b.reset(a1);
  b.reset(a2);
  b.reset(a3);
  b.gate(GateKind::H, a1);
  b.gate(GateKind::CNOT, a1, a2);  // window a1<->a2 opens
  b.gate(GateKind::CNOT, a1, q[3]);
  b.gate(GateKind::CNOT, a1, q[4]);
  for (int d : {5, 6, 1, 2}) b.gate(GateKind::CNOT, q[d], a2);
  b.gate(GateKind::CNOT, a1, q[5]);
  b.gate(GateKind::CNOT, a1, q[6]);
  b.gate(GateKind::CNOT, a1, a2);  // window a1<->a2 closes
  b.gate(GateKind::CNOT, a1, a3);  // window a1<->a3 opens
  for (int d : {4, 6, 0, 2}) b.gate(GateKind::CNOT, q[d], a3);
  b.gate(GateKind::CNOT, a1, a3);  // window a1<->a3 closes
  b.gate(GateKind::H, a1);
  b.measure(a1, x1);
  b.measure(a2, z2);
  b.measure(a3, z3);
}

// Flagged Z1/X2/X3 round, mirror image of the round above: a1 reads the Z
// generator on {3,4,5,6}, a2/a3 read the X generators on {1,2,5,6} and
// {0,2,4,6} and each opens a window around a1.
void emit_flagged_zxx(CircuitBuilder& b, const Block& q, int a1, int a2,
                      int a3, int z1, int x2, int x3) {
  b.reset(a1);
  b.reset(a2);
  b.reset(a3);
  b.gate(GateKind::H, a2);
  b.gate(GateKind::H, a3);
  b.gate(GateKind::CNOT, a2, a1);  // window a2<->a1 opens
  b.gate(GateKind::CNOT, a2, q[5]);
  b.gate(GateKind::CNOT, a2, q[6]);
  b.gate(GateKind::CNOT, q[5], a1);
  b.gate(GateKind::CNOT, q[6], a1);
  b.gate(GateKind::CNOT, a2, q[1]);
  b.gate(GateKind::CNOT, a2, q[2]);
  b.gate(GateKind::CNOT, q[3], a1);
  b.gate(GateKind::CNOT, q[4], a1);
  b.gate(GateKind::CNOT, a2, a1);  // window a2<->a1 closes
  b.gate(GateKind::CNOT, a3, a1);  // window a3<->a1 opens
  for (int d : {4, 6, 0, 2}) b.gate(GateKind::CNOT, a3, q[d]);
  b.gate(GateKind::CNOT, a3, a1);  // window a3<->a1 closes
  b.gate(GateKind::H, a2);
  b.gate(GateKind::H, a3);
  b.measure(a1, z1);
  b.measure(a2, x2);
  b.measure(a3, x3);
}

// Bare readout of one X-type (x_basis) or Z-type generator through anc.
void emit_bare_generator(CircuitBuilder& b, const Block& q,
                         const std::array<int, 4>& support, bool x_basis,
                         int anc, int dest) {
  b.reset(anc);
  if (x_basis) {
    b.gate(GateKind::H, anc);
    for (int d : support) b.gate(GateKind::CNOT, anc, q[d]);
    b.gate(GateKind::H, anc);
  } else {
    for (int d : support) b.gate(GateKind::CNOT, q[d], anc);
  }
  b.measure(anc, dest);
}

// Prepared |0> ancilla block through flagged RUS prep, optionally rotated to
// |+> with a transversal Hadamard.
void emit_prep_block(CircuitBuilder& b, const Block& q, int anc_a, int anc_b,
                     int rus_limit, bool plus) {
  emit_prep_zero_ft(b, q, anc_a, anc_b, rus_limit);
  if (plus) emit_logical_1q(b, GateKind::H, q);
}

// Shared tail of the magic-state verification: transversal-Hadamard
// eigenvalue readout through h with per-qubit RY(pi/4) conjugated CZs.
void emit_ch(CircuitBuilder& b, int h, int d) {
  b.gate(GateKind::RY, -kPi / 4, d);
  b.gate(GateKind::CZ, h, d);
  b.gate(GateKind::RY, kPi / 4, d);
}

void emit_prep_h_encoding(CircuitBuilder& b, const Block& q,
                          const std::vector<int>& ancs, int rus_limit) {
  int h = ancs[0], a1 = ancs[1], a2 = ancs[2], a3 = ancs[3];
  b.rus(rus_limit, [&]() -> std::vector<std::pair<int, int>> {
    for (int j = 0; j < 7; ++j) b.reset(q[j]);
    b.reset(h);
    // Encode the physical +1 Hadamard eigenstate RY(pi/4)|0>.
    emit_encode_state(b, q,
                      [&](int in) { b.gate(GateKind::RY, kPi / 4, in); });
    // Hadamard eigenvalue readout; accepted runs project onto the +1 space.
    b.gate(GateKind::H, h);
    for (int j = 0; j < 7; ++j) emit_ch(b, h, q[j]);
    b.gate(GateKind::H, h);
    int mh = b.measure(h);
    // Full six-generator detection pass, accept on a clean record.
    int x1 = b.bit(), z2 = b.bit(), z3 = b.bit();
    int z1 = b.bit(), x2 = b.bit(), x3 = b.bit();
    emit_flagged_xzz(b, q, a1, a2, a3, x1, z2, z3);
    emit_flagged_zxx(b, q, a1, a2, a3, z1, x2, x3);
    return {{mh, 0}, {x1, 0}, {z2, 0}, {z3, 0}, {z1, 0}, {x2, 0}, {x3, 0}};
  });
}

// Specialized / hardware magic-state prep.
//
// Encoder: pivots {0,1,4}, eight CNOTs, and one RXX(pi/4) whose X x X axis
// back-propagates to the logical X, so the output is R_Xbar(pi/4)|0bar> and
// the transversal S-dagger rotates it onto the Hadamard eigenstate.
// Verification stages:
//   * an origin flag bracketing one encoder CNOT on its control (the one
//     residual hook class after the two stages below starts there);
//   * a flagged Hadamard-eigenvalue readout: |+> ancilla h drives a
//     controlled-H chain (RY-conjugated CZs) across the block with a flag
//     qubit closing a CNOT window around the chain, so any fault on h that
//     would corrupt multiple data qubits also flips the flag;
//   * a joint X/Z stabilizer check on the quad {0,2,4,6}: ancillas ax
//     (CNOT fan-out, X type) and az (CZ fan-out, Z type) interleave
//     per-qubit in the pattern CNOT/CZ, CZ/CNOT, CZ/CNOT, CNOT/CZ.  An even
//     number of CNOT-before-CZ qubits keeps the effective ax-az coupling
//     trivial, while a hook pair deposited mid fan-out flips the partner
//     ancilla's readout an odd number of times, so the check flags its own
//     dangerous hooks.
// Every undetected single fault leaves the accepted state within a
// weight-one error of the magic state.  The hardware variant adds a second
// origin flag and reorders commuting gates so the whole gadget runs at
// two-qubit depth 9; the specialized variant drops that flag and runs the
// stages serially (28 two-qubit gates, 5 ancillas vs 30 and 6).
void emit_prep_h_dense(CircuitBuilder& b, const std::string& variant,
                       const Block& q, const std::vector<int>& ancs,
                       int rus_limit) {
  bool hw = variant == "hardware";
  int h = ancs[0], cf = ancs[1], ax = ancs[2], az = ancs[3], of = ancs[4];
  int of2 = hw ? ancs[5] : -1;
  b.rus(rus_limit, [&]() -> std::vector<std::pair<int, int>> {
    for (int j = 0; j < 7; ++j) b.reset(q[j]);
    b.reset(h);
    b.reset(cf);
    b.reset(ax);
    b.reset(az);
    b.reset(of);
    if (hw) b.reset(of2);
    int mh, mf, mx, mz, mof, mof2 = -1;
    if (!hw) {
      for (int p : {0, 1, 4}) b.gate(GateKind::H, q[p]);
      b.gate(GateKind::CNOT, q[1], q[3]);
      b.gate(GateKind::CNOT, q[0], q[2]);
      b.gate(GateKind::RXX, kPi / 4, q[0], q[5]);
      b.gate(GateKind::CNOT, q[3], of);  // origin flag window opens
      b.gate(GateKind::CNOT, q[3], q[5]);
      b.gate(GateKind::CNOT, q[3], of);  // origin flag window closes
      b.gate(GateKind::CNOT, q[5], q[6]);
      b.gate(GateKind::CNOT, q[2], q[5]);
      b.gate(GateKind::CNOT, q[4], q[1]);
      b.gate(GateKind::CNOT, q[1], q[2]);
      b.gate(GateKind::CNOT, q[2], q[3]);
      mof = b.measure(of);
      for (int j = 0; j < 7; ++j) b.gate(GateKind::Sdg, q[j]);
      b.gate(GateKind::H, h);
      b.gate(GateKind::CNOT, h, cf);  // chain flag window opens
      for (int c : {0, 1, 2, 3, 4, 5, 6}) emit_ch(b, h, q[c]);
      b.gate(GateKind::CNOT, h, cf);  // chain flag window closes
      b.gate(GateKind::H, h);
      mh = b.measure(h);
      mf = b.measure(cf);
      b.gate(GateKind::H, ax);
      b.gate(GateKind::H, az);
      const int sup[4] = {0, 2, 4, 6};
      for (int i = 0; i < 4; ++i) {
        int d = sup[i];
        if (i == 0 || i == 3) {
          b.gate(GateKind::CNOT, ax, q[d]);
          b.gate(GateKind::CZ, az, q[d]);
        } else {
          b.gate(GateKind::CZ, az, q[d]);
          b.gate(GateKind::CNOT, ax, q[d]);
        }
      }
      b.gate(GateKind::H, ax);
      mx = b.measure(ax);
      b.gate(GateKind::H, az);
      mz = b.measure(az);
    } else {
      emit_prep_h_hw_body(b, q, h, cf, ax, az, of, of2);
      mh = b.measure(h);
      mf = b.measure(cf);
      mx = b.measure(ax);
      mz = b.measure(az);
      mof = b.measure(of);
      mof2 = b.measure(of2);
    }
    std::vector<std::pair<int, int>> ok = {
        {mh, 0}, {mf, 0}, {mx, 0}, {mz, 0}, {mof, 0}};
    if (hw) ok.push_back({mof2, 0});
    return ok;
  });
}

}  // namespace

int instruction_count(const std::vector<Instruction>& instrs) {
  int n = 0;
  for (const auto& in : instrs) n += 1 + instruction_count(in.body);
  return n;
}

void emit_encode_zero(CircuitBuilder& b, const Block& q) {
  // Basis rows g1 (pivot 3), g2 (pivot 2), g2^g3 = {0,1,4,5} (pivot 0).
  // Pivots are never targets, so the nine fan-out CNOTs commute and may be
  // interleaved freely; this order leaves exactly three dangerous X-type
  // hook classes ({3,4},{0,5},{2,6}, each overlapping the Z verification
  // support {0,1,3,6} oddly) and four dangerous Z-type classes
  // ({1,2},{3,4},{2,5},{3,6}, each overlapping the X verification support
  // {0,2,4,6} oddly).  Every other single hook either stays weight one,
  // completes to a stabilizer under the weight-one decoder, or acts
  // trivially on the freshly prepared |0>.
  b.gate(GateKind::H, q[3]);
  b.gate(GateKind::H, q[2]);
  b.gate(GateKind::H, q[0]);
  b.gate(GateKind::CNOT, q[0], q[1]);
  b.gate(GateKind::CNOT, q[0], q[4]);
  b.gate(GateKind::CNOT, q[0], q[5]);
  b.gate(GateKind::CNOT, q[2], q[1]);
  b.gate(GateKind::CNOT, q[3], q[5]);
  b.gate(GateKind::CNOT, q[2], q[5]);
  b.gate(GateKind::CNOT, q[2], q[6]);
  b.gate(GateKind::CNOT, q[3], q[6]);
  b.gate(GateKind::CNOT, q[3], q[4]);
}

void emit_prep_zero_ft(CircuitBuilder& b, const Block& q, int anc_a,
                       int anc_b, int rus_limit) {
  b.rus(rus_limit, [&]() -> std::vector<std::pair<int, int>> {
    for (int j = 0; j < 7; ++j) b.reset(q[j]);
    emit_encode_zero(b, q);
    // X-type parity on the stabilizer support {0,2,4,6}: deterministic 0 on
    // a good run, flipped by every dangerous encoder Z hook (all four have
    // odd overlap).  Hooks of the check itself leave X suffixes; the one
    // dangerous suffix {4,6} has odd overlap with {0,1,3,6}, so the next
    // check catches it.
    b.reset(anc_a);
    b.gate(GateKind::H, anc_a);
    b.gate(GateKind::CNOT, anc_a, q[0]);
    b.gate(GateKind::CNOT, anc_a, q[2]);
    b.gate(GateKind::CNOT, anc_a, q[4]);
    b.gate(GateKind::CNOT, anc_a, q[6]);
    b.gate(GateKind::H, anc_a);
    int mx = b.measure(anc_a);
    // Z-type parity on the stabilizer support {0,1,3,6}: flipped by every
    // dangerous encoder X hook and by the X check's {4,6} suffix.  The flag
    // brackets the chain interior so the chain's own dangerous hook suffix
    // Z{3,6} raises it; the remaining suffixes are weight <= 1 or decode
    // cleanly, and the full-support hook is a stabilizer.
    b.reset(anc_a);
    b.reset(anc_b);
    b.gate(GateKind::H, anc_a);
    b.gate(GateKind::CNOT, anc_a, anc_b);
    b.gate(GateKind::CZ, anc_a, q[0]);
    b.gate(GateKind::CZ, anc_a, q[1]);
    b.gate(GateKind::CZ, anc_a, q[3]);
    b.gate(GateKind::CNOT, anc_a, anc_b);
    b.gate(GateKind::CZ, anc_a, q[6]);
    b.gate(GateKind::H, anc_a);
    int mz = b.measure(anc_a);
    int mf = b.measure(anc_b);
    return {{mx, 0}, {mz, 0}, {mf, 0}};
  });
}

void emit_encode_state(CircuitBuilder& b, const Block& q,
                       const std::function<void(int)>& prep_input) {
  prep_input(q[1]);
  // Fan the input out along the logical X representative {1,4,6}, then
  // superpose the stabilizer row space on top.
  b.gate(GateKind::CNOT, q[1], q[4]);
  b.gate(GateKind::CNOT, q[1], q[6]);
  emit_encode_zero(b, q);
}

void emit_logical_1q(CircuitBuilder& b, GateKind g, const Block& q) {
  switch (g) {
    case GateKind::H:
      for (int j = 0; j < 7; ++j) b.gate(GateKind::H, q[j]);
      break;
    case GateKind::S:  // logical S is transversal S-dagger
      for (int j = 0; j < 7; ++j) b.gate(GateKind::Sdg, q[j]);
      break;
    case GateKind::Sdg:
      for (int j = 0; j < 7; ++j) b.gate(GateKind::S, q[j]);
      break;
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
      for (int j = 0; j < 3; ++j) b.gate(g, q[j]);
      break;
    default:
      throw std::invalid_argument("no transversal form for this gate");
  }
}

void emit_logical_cnot(CircuitBuilder& b, const Block& ctrl,
                       const Block& tgt) {
  for (int j = 0; j < 7; ++j) b.gate(GateKind::CNOT, ctrl[j], tgt[j]);
}

void emit_logical_cz(CircuitBuilder& b, const Block& a, const Block& c) {
  for (int j = 0; j < 7; ++j) b.gate(GateKind::CZ, a[j], c[j]);
}

int emit_logical_measure_z(CircuitBuilder& b, const Block& q,
                           std::array<int, 7>* raw_out) {
  std::array<int, 7> raw;
  for (int j = 0; j < 7; ++j) raw[j] = b.measure(q[j]);
  if (raw_out) *raw_out = raw;
  int dest = b.bit();
  b.assign_decode7(dest, std::vector<int>(raw.begin(), raw.end()));
  return dest;
}

int emit_logical_measure_x(CircuitBuilder& b, const Block& q,
                           std::array<int, 7>* raw_out) {
  emit_logical_1q(b, GateKind::H, q);
  return emit_logical_measure_z(b, q, raw_out);
}

std::array<int, 3> emit_syndrome_bits(CircuitBuilder& b,
                                      const std::array<int, 7>& raw) {
  std::array<int, 3> s{};
  s[0] = b.bit();
  b.assign_xor(s[0], {raw[3], raw[4], raw[5], raw[6]});
  s[1] = b.bit();
  b.assign_xor(s[1], {raw[1], raw[2], raw[5], raw[6]});
  s[2] = b.bit();
  b.assign_xor(s[2], {raw[0], raw[2], raw[4], raw[6]});
  return s;
}

void emit_t_bare(CircuitBuilder& b, const Block& data, const Block& anc) {
  emit_logical_cnot(b, data, anc);
  int m = emit_logical_measure_z(b, anc);
  b.cond({{m, 1}}, [&] { emit_logical_1q(b, GateKind::S, data); });
}

void emit_t_swap(CircuitBuilder& b, const Block& data, const Block& anc) {
  emit_logical_cnot(b, anc, data);
  int m = emit_logical_measure_z(b, data);
  b.cond({{m, 1}}, [&] {
    emit_logical_1q(b, GateKind::X, anc);
    emit_logical_1q(b, GateKind::S, anc);
  });
}

void emit_qec_steane_bare(CircuitBuilder& b, const Block& data,
                          const Block& anc, int verify_a, int verify_b,
                          int rus_limit) {
  // X-error round: copy bit-flips onto a fresh ancilla block and decode its
  // Z readout.  The block starts in |+> so its own logical Z value one-time
  // pads the decoded bit; a |0> block here would project the data's logical.
  emit_prep_block(b, anc, verify_a, verify_b, rus_limit, true);
  emit_logical_cnot(b, data, anc);
  std::array<int, 7> raw;
  emit_logical_measure_z(b, anc, &raw);
  correct_by_syndrome(b, emit_syndrome_bits(b, raw), data, GateKind::X);
  // Z-error round: phase flips copy onto a |0> block, read in the X basis;
  // the block's indeterminate logical X pads the decoded bit likewise.
  emit_prep_block(b, anc, verify_a, verify_b, rus_limit, false);
  emit_logical_cnot(b, anc, data);
  emit_logical_measure_x(b, anc, &raw);
  correct_by_syndrome(b, emit_syndrome_bits(b, raw), data, GateKind::Z);
}

void emit_qec_steane_swap(CircuitBuilder& b, const Block& data,
                          const Block& anc, int verify_a, int verify_b,
                          int rus_limit) {
  // Teleport onto the ancilla block (decoded Z readout of the data block),
  // then teleport back onto a freshly prepared data block.
  emit_prep_block(b, anc, verify_a, verify_b, rus_limit, true);
  emit_logical_cnot(b, anc, data);
  int m1 = emit_logical_measure_z(b, data);
  b.cond({{m1, 1}}, [&] { emit_logical_1q(b, GateKind::X, anc); });
  emit_prep_block(b, data, verify_a, verify_b, rus_limit, false);
  emit_logical_cnot(b, anc, data);
  int m2 = emit_logical_measure_x(b, anc);
  b.cond({{m2, 1}}, [&] { emit_logical_1q(b, GateKind::Z, data); });
}

void emit_qec_knill(CircuitBuilder& b, const Block& data, const Block& anc_a,
                    const Block& anc_b, int verify_a, int verify_b,
                    int rus_limit) {
  emit_prep_block(b, anc_a, verify_a, verify_b, rus_limit, true);
  emit_prep_block(b, anc_b, verify_a, verify_b, rus_limit, false);
  emit_logical_cnot(b, anc_a, anc_b);  // logical Bell pair
  emit_logical_cnot(b, data, anc_a);
  int m1 = emit_logical_measure_x(b, data);
  int m2 = emit_logical_measure_z(b, anc_a);
  b.cond({{m2, 1}}, [&] { emit_logical_1q(b, GateKind::X, anc_b); });
  b.cond({{m1, 1}}, [&] { emit_logical_1q(b, GateKind::Z, anc_b); });
}

const std::vector<std::array<uint8_t, 6>>& hook_correction_rows() {
  // Flagged-record signatures whose decoded correction lands one logical
  // class away from the actual hook error; membership adds the logical
  // Pauli on top of the syndrome-keyed correction.  Same rows serve the X
  // record (apply logical Z) and the Z record (apply logical X).
  static const std::vector<std::array<uint8_t, 6>> rows = {
      {1, 0, 0, 0, 0, 1},  // round-1 partner hook on {1,2}
      {1, 0, 0, 0, 1, 0},  // round-1 partner hook on {0,2}
      {0, 1, 1, 0, 0, 1},  // shared-ancilla hook on {3,4} or {5,6}
  };
  return rows;
}

void emit_qec_flag_ft(CircuitBuilder& b, const Block& data, int a1, int a2,
                      int a3) {
  int x1 = b.bit(), z2 = b.bit(), z3 = b.bit();
  int z1 = b.bit(), x2 = b.bit(), x3 = b.bit();
  b.assign_const(z1, 0);
  b.assign_const(x2, 0);
  b.assign_const(x3, 0);
  emit_flagged_xzz(b, data, a1, a2, a3, x1, z2, z3);
  b.cond({{x1, 0}, {z2, 0}, {z3, 0}}, [&] {
    emit_flagged_zxx(b, data, a1, a2, a3, z1, x2, x3);
  });
  // Early stop on a clean record; otherwise read all six generators bare
  // (a second fault would be needed to corrupt them) and correct.
  int ind = b.bit();
  b.assign_const(ind, 1);
  b.cond({{x1, 0}, {z2, 0}, {z3, 0}, {z1, 0}, {x2, 0}, {x3, 0}},
         [&] { b.assign_const(ind, 0); });
  b.cond({{ind, 1}}, [&] {
    std::array<int, 3> xs{b.bit(), b.bit(), b.bit()};
    std::array<int, 3> zs{b.bit(), b.bit(), b.bit()};
    emit_bare_generator(b, data, kGen1, true, a1, xs[0]);
    emit_bare_generator(b, data, kGen2, true, a1, xs[1]);
    emit_bare_generator(b, data, kGen3, true, a1, xs[2]);
    emit_bare_generator(b, data, kGen1, false, a1, zs[0]);
    emit_bare_generator(b, data, kGen2, false, a1, zs[1]);
    emit_bare_generator(b, data, kGen3, false, a1, zs[2]);
    correct_by_syndrome(b, xs, data, GateKind::Z);
    correct_by_syndrome(b, zs, data, GateKind::X);
    // X-basis readouts witness Z errors and vice versa; group each record
    // by basis so it pairs with the matching logical correction below.
    std::array<int, 6> xrec = {x1, x2, x3, xs[0], xs[1], xs[2]};
    std::array<int, 6> zrec = {z1, z2, z3, zs[0], zs[1], zs[2]};
    for (const auto& row : hook_correction_rows()) {
      std::vector<std::pair<int, int>> wx, wz;
      for (int i = 0; i < 6; ++i) {
        wx.push_back({xrec[i], row[i]});
        wz.push_back({zrec[i], row[i]});
      }
      b.cond(wx, [&] { emit_logical_1q(b, GateKind::Z, data); });
      b.cond(wz, [&] { emit_logical_1q(b, GateKind::X, data); });
    }
  });
}

void emit_prep_h(CircuitBuilder& b, const std::string& variant, const Block& q,
                 const std::vector<int>& ancs, int rus_limit) {
  if (variant == "encoding") {
    if (ancs.size() < 4) throw std::invalid_argument("need 4 ancillas");
    emit_prep_h_encoding(b, q, ancs, rus_limit);
  } else if (variant == "specialized" || variant == "hardware") {
    if (ancs.size() < (variant == "hardware" ? 4u : 3u))
      throw std::invalid_argument("not enough ancillas");
    emit_prep_h_dense(b, variant, q, ancs, rus_limit);
  } else {
    throw std::invalid_argument("unknown prep_h variant: " + variant);
  }
}

void emit_h_to_t(CircuitBuilder& b, const Block& q) {
  // H Sdg sends cos(pi/8)|0> + sin(pi/8)|1> to (|0> + e^{i pi/4}|1>)/sqrt(2)
  // up to global phase, matching the MagicInit convention.
  emit_logical_1q(b, GateKind::Sdg, q);
  emit_logical_1q(b, GateKind::H, q);
}

int emit_pauli_measure_bare(CircuitBuilder& b, const Block& q, int anc) {
  b.reset(anc);
  b.gate(GateKind::H, anc);
  for (int d : kGen1) b.gate(GateKind::CNOT, anc, q[d]);
  b.gate(GateKind::H, anc);
  return b.measure(anc);
}

Gadget gadget(const std::string& kind, const std::string& variant,
              int rus_limit) {
  Gadget g;
  g.kind = kind;
  g.variant = variant;
  CircuitBuilder b;
  auto block = [&] {
    Block q;
    for (auto& x : q) x = b.qubit();
    return q;
  };
  auto mark_audit = [&] { g.audit_from = instruction_count(b.peek().instrs); };

  if (kind == "prep_zero" || kind == "prep_plus") {
    Block q = block();
    int anc_a = b.qubit(), anc_b = b.qubit();
    g.blocks = {q};
    g.output_block = q;
    g.ancillas = {anc_a, anc_b};
    emit_prep_zero_ft(b, q, anc_a, anc_b, rus_limit);
    if (kind == "prep_plus") emit_logical_1q(b, GateKind::H, q);
  } else if (kind == "prep_h" || kind == "prep_t") {
    std::string v = variant.empty() ? "specialized" : variant;
    if (kind == "prep_t") v = "specialized";
    Block q = block();
    int n_anc = (v == "specialized") ? 3 : 4;
    g.ancillas = b.qubits(n_anc);
    g.blocks = {q};
    g.output_block = q;
    emit_prep_h(b, v, q, g.ancillas, rus_limit);
    if (kind == "prep_t") emit_h_to_t(b, q);
    if (kind == "prep_h") g.variant = v;
  } else if (kind == "t_gate") {
    std::string v = variant.empty() ? "t-swap" : variant;
    Block data = block(), anc = block();
    b.ideal_prep_zero(std::vector<int>(data.begin(), data.end()));
    emit_encode_state(b, anc,
                      [&](int in) { b.gate(GateKind::MagicInit, in); });
    mark_audit();
    g.blocks = {data, anc};
    if (v == "t-bare") {
      emit_t_bare(b, data, anc);
      g.output_block = data;
    } else if (v == "t-swap") {
      emit_t_swap(b, data, anc);
      g.output_block = anc;
    } else {
      throw std::invalid_argument("unknown t_gate variant: " + v);
    }
    g.variant = v;
  } else if (kind == "qec") {
    std::string v = variant.empty() ? "flag-ft" : variant;
    Block data = block();
    b.ideal_prep_zero(std::vector<int>(data.begin(), data.end()));
    mark_audit();
    g.blocks = {data};
    g.output_block = data;
    if (v == "flag-ft") {
      g.ancillas = b.qubits(3);
      emit_qec_flag_ft(b, data, g.ancillas[0], g.ancillas[1], g.ancillas[2]);
    } else if (v == "steane-bare" || v == "steane-swap") {
      Block anc = block();
      int va = b.qubit(), vb = b.qubit();
      g.blocks.push_back(anc);
      g.ancillas = {va, vb};
      if (v == "steane-bare")
        emit_qec_steane_bare(b, data, anc, va, vb, rus_limit);
      else
        emit_qec_steane_swap(b, data, anc, va, vb, rus_limit);
    } else if (v == "knill") {
      Block anc_a = block(), anc_b = block();
      int va = b.qubit(), vb = b.qubit();
      g.blocks.push_back(anc_a);
      g.blocks.push_back(anc_b);
      g.ancillas = {va, vb};
      emit_qec_knill(b, data, anc_a, anc_b, va, vb, rus_limit);
      g.output_block = anc_b;
    } else {
      throw std::invalid_argument("unknown qec variant: " + v);
    }
    g.variant = v;
  } else if (kind == "logical_measure") {
    Block q = block();
    b.ideal_prep_zero(std::vector<int>(q.begin(), q.end()));
    mark_audit();
    g.blocks = {q};
    g.output_block = q;
    g.logical_bits = {variant == "x" ? emit_logical_measure_x(b, q)
                                     : emit_logical_measure_z(b, q)};
  } else if (kind == "transversal") {
    GateKind gk;
    if (!gate_name_lookup(variant, &gk))
      throw std::invalid_argument("unknown gate: " + variant);
    Block q = block();
    b.ideal_prep_zero(std::vector<int>(q.begin(), q.end()));
    g.blocks = {q};
    g.output_block = q;
    if (gk == GateKind::CNOT || gk == GateKind::CZ) {
      Block q2 = block();
      b.ideal_prep_zero(std::vector<int>(q2.begin(), q2.end()));
      mark_audit();
      g.blocks.push_back(q2);
      if (gk == GateKind::CNOT)
        emit_logical_cnot(b, q, q2);
      else
        emit_logical_cz(b, q, q2);
    } else {
      mark_audit();
      emit_logical_1q(b, gk, q);
    }
  } else if (kind == "pauli_measurement") {
    Block q = block();
    int anc = b.qubit();
    b.ideal_prep_zero(std::vector<int>(q.begin(), q.end()));
    mark_audit();
    g.blocks = {q};
    g.output_block = q;
    g.ancillas = {anc};
    g.logical_bits = {emit_pauli_measure_bare(b, q, anc)};
  } else {
    throw std::invalid_argument("unknown gadget kind: " + kind);
  }
  g.circuit = b.take();
  return g;
}

}  // namespace ftqc

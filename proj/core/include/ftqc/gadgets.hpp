#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ftqc/circuit.hpp"

namespace ftqc {

// Physical qubit indices of one code block, position 0..6 within the block.
using Block = std::array<int, 7>;

// A self-contained logical subroutine: the circuit plus the role metadata a
// compiler or auditor needs (which qubits carry the logical output, which
// classical bits gate acceptance, where idealized input preparation ends).
struct Gadget {
  std::string kind;
  std::string variant;
  Circuit circuit;
  std::vector<Block> blocks;  // data block(s) first, then ancilla blocks
  Block output_block{};       // block holding the logical qubit afterwards
  std::vector<int> ancillas;  // bare (non-block) ancilla qubits
  // Acceptance predicate over classical bits; empty means always accepted.
  // Repeat-until-success retries are internal, so an exhausted limit shows
  // up as a discarded shot rather than here.
  std::vector<std::pair<int, int>> success_when;
  std::vector<int> logical_bits;  // decoded logical outcomes, if any
  // Pre-order instruction ids below this belong to idealized input
  // preparation and are exempt from fault injection.
  int audit_from = 0;
};

// Catalogue lookup.  Kinds and variants:
//   prep_zero                       flagged RUS |0> preparation
//   prep_plus                       prep_zero followed by transversal H
//   prep_h    {encoding, specialized, hardware}
//   prep_t                          specialized prep_h rotated into |T>
//   t_gate    {t-bare, t-swap}      teleported T via a |T> block
//   qec       {steane-bare, steane-swap, flag-ft, knill}
//   logical_measure                 transversal readout + decoding
//   transversal {h, s, sdg, x, y, z, cnot, cz}
//   pauli_measurement               bare-ancilla stabilizer readout (not FT)
// Throws std::invalid_argument for unknown names.
Gadget gadget(const std::string& kind, const std::string& variant = "",
              int rus_limit = 3);

// ---- Emitters over caller-chosen qubits, composable by the compiler ----

// Non-fault-tolerant encoded |0>: H on three pivot qubits then CNOT fan-outs
// along a basis of the Hamming code, ordered so that every mid-fan-out hook
// error reduces to weight <= 1 or to a class the prep flag detects.
void emit_encode_zero(CircuitBuilder& b, const Block& q);

// Flagged repeat-until-success |0> preparation: encode, then verify with an
// X-type parity check on {0,2,4,6} (catches encoder Z hooks) followed by a
// Z-type parity check on {0,1,3,6} whose readout ancilla carries a flag
// qubit bracketing the middle of the phase chain (catches encoder X hooks
// and the check's own hooks).  Retry whenever any of the three bits is 1.
// `anc_a` carries both parity readouts in turn; `anc_b` carries the flag.
void emit_prep_zero_ft(CircuitBuilder& b, const Block& q, int anc_a,
                       int anc_b, int rus_limit);

// Encode an arbitrary single-qubit state: `prep_input` receives the physical
// qubit that should carry the input (already reset), then the state is fanned
// out along a weight-3 logical X representative and encoded (11 CNOTs total).
void emit_encode_state(CircuitBuilder& b, const Block& q,
                       const std::function<void(int)>& prep_input);

// Transversal / constant-depth logical Cliffords.  `g` one of H, S, Sdg, X,
// Y, Z.  Logical S is S-dagger on every physical qubit; X/Y/Z use the
// weight-3 representatives on positions {0,1,2}.
void emit_logical_1q(CircuitBuilder& b, GateKind g, const Block& q);
void emit_logical_cnot(CircuitBuilder& b, const Block& ctrl, const Block& tgt);
void emit_logical_cz(CircuitBuilder& b, const Block& a, const Block& c);

// Transversal Z-basis readout of a block: 7 measurements plus the decoding
// assignment.  Returns the decoded logical bit; raw bits optionally exposed.
int emit_logical_measure_z(CircuitBuilder& b, const Block& q,
                           std::array<int, 7>* raw_out = nullptr);
int emit_logical_measure_x(CircuitBuilder& b, const Block& q,
                           std::array<int, 7>* raw_out = nullptr);

// Writes the three syndrome bits (row 0 first) of 7 raw readout bits.
std::array<int, 3> emit_syndrome_bits(CircuitBuilder& b,
                                      const std::array<int, 7>& raw);

// Teleported T gate consuming a prepared |T> block.
//   t-bare: block-CNOT data->anc, measure anc, conditional S on data;
//           the logical stays on `data`.
//   t-swap: block-CNOT anc->data, measure data, conditional X then S on anc;
//           the logical moves to `anc` (returned output block).
void emit_t_bare(CircuitBuilder& b, const Block& data, const Block& anc);
void emit_t_swap(CircuitBuilder& b, const Block& data, const Block& anc);

// Steane-style error correction.  Both run an X round then a Z round.
//   steane-bare: syndromes from transversal copies onto freshly prepared
//                ancilla blocks, decoded and actively corrected on `data`.
//   steane-swap: two teleportation rounds; the logical ends back on `data`
//                (the block is measured out and re-prepared in between).
// The ancilla block is re-prepared internally through flagged RUS prep;
// `verify_a`/`verify_b` are the two bare qubits that prep uses.
void emit_qec_steane_bare(CircuitBuilder& b, const Block& data,
                          const Block& anc, int verify_a, int verify_b,
                          int rus_limit);
void emit_qec_steane_swap(CircuitBuilder& b, const Block& data,
                          const Block& anc, int verify_a, int verify_b,
                          int rus_limit);

// Knill-style teleportation QEC through a logical Bell pair on (anc_a,
// anc_b); the logical moves to anc_b.
void emit_qec_knill(CircuitBuilder& b, const Block& data, const Block& anc_a,
                    const Block& anc_b, int verify_a, int verify_b,
                    int rus_limit);

// Flag fault-tolerant QEC with three shared ancillas: a flagged X1/Z2/Z3
// round, a conditional flagged Z1/X2/X3 round, an early stop when every
// flagged syndrome bit is zero, bare readout of all six generators
// otherwise, decoded corrections, and hook corrections keyed on membership
// of the six-bit X (resp. Z) records in hook_correction_rows().
void emit_qec_flag_ft(CircuitBuilder& b, const Block& data, int a1, int a2,
                      int a3);

// Six-bit flagged+bare syndrome patterns that indicate a hook error whose
// naive correction lands in a logical class; validated by exhaustive fault
// injection (see the audit tests).
const std::vector<std::array<uint8_t, 6>>& hook_correction_rows();

// Magic-state preparation.  All variants are RUS-wrapped and succeed on
// all-zero verification bits; the prepared state is the +1 eigenstate of the
// transversal logical Hadamard.
//   encoding:    encode a physical R_Y(pi/4)|0> directly (11 CNOTs), verify
//                with a flagged logical-H measurement and a full flagged
//                six-stabilizer detection round.
//   specialized: rotate |0> by R_XX(pi/4) inserted where the back-propagated
//                logical X has weight 2, then a logical-H measurement and a
//                two-stabilizer detection pair sharing mutual flags.
//   hardware:    specialized plus one dedicated flag qubit on the
//                measurement ancilla (two more CNOTs, depth still 9).
// `ancs` must hold at least 3 (encoding: 4, hardware: 4) spare qubits.
void emit_prep_h(CircuitBuilder& b, const std::string& variant, const Block& q,
                 const std::vector<int>& ancs, int rus_limit);

// |T> = H S |H> on a block already holding |H>.
void emit_h_to_t(CircuitBuilder& b, const Block& q);

// Bare-ancilla readout of the X-type generator on positions {3,4,5,6}: the
// textbook non-fault-tolerant measurement whose hook errors are logical.
int emit_pauli_measure_bare(CircuitBuilder& b, const Block& q, int anc);

// Recursive instruction count, for computing Gadget::audit_from offsets.
int instruction_count(const std::vector<Instruction>& instrs);

}  // namespace ftqc

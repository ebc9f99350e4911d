#pragma once

#include <string>
#include <vector>

#include "ftqc/circuit.hpp"
#include "ftqc/gadgets.hpp"

namespace ftqc {

// Compilation knobs for turning a logical Clifford+rotation circuit into a
// physical Steane-code circuit.
struct LoweringConfig {
  std::string prep_h_variant = "specialized";  // magic-state source
  std::string t_variant = "t-bare";            // {t-bare, t-swap}
  std::string qec_variant = "steane-swap";     // gadget run at "qec" barriers
  int rus_limit = 3;                           // limit for every RUS block
  int shared_ancillas = 6;                     // bare ancillas (k)
  int t_budget = 4;                            // rotation synthesis T cap
  bool run_simplify = true;                    // pre-lowering cleanup passes
  bool head_start = true;                      // |T>-state head-start rewrite
};

// What the compiler did: allocation map plus summary counts.
struct LoweringReport {
  int logical_qubits = 0;
  int physical_qubits = 0;
  std::vector<Block> data_blocks;  // block i carries logical qubit i
  Block ancilla_block{};           // serializes T teleportation and QEC
  std::vector<int> shared_ancillas;
  GateCensus census_min, census_max;
  long t_count = 0;     // logical T gates teleported
  int rus_blocks = 0;   // RUS regions emitted
  double synthesis_fidelity = 1.0;  // product over rotation approximations
};

// One rotation-synthesis result: a Clifford+T replacement sequence over
// placeholder qubit indices 0 (and 1 for two-qubit sources), and the exact
// channel fidelity of the replacement against the requested unitary.
struct DecompositionEntry {
  GateKind source = GateKind::RZ;
  double theta = 0.0;
  std::vector<Instruction> replacement;
  double fidelity = 1.0;
  int t_count = 0;
};

// Synthesizes `gate(theta)` over {H, S, Sdg, X, Y, Z, SX, SXdg, T, Tdg,
// CNOT, CZ} using at most `t_budget` T-like gates.
//   RZ at multiples of pi/4   -> exact table entry (powers of T), fidelity 1
//   controlled-S              -> exact 3-T identity
//   RZ elsewhere              -> breadth-first search over 1-qubit Clifford+T
//                                words, maximizing channel fidelity
//   controlled-RY             -> search over V (CNOT) W (CNOT) with V, W drawn
//                                from the 1-qubit words (the target is block
//                                diagonal, so this family is closed over it)
//   RZZ                       -> CNOT conjugation to RZ on the second qubit
// Throws std::invalid_argument for other gates; std::runtime_error when the
// budget cannot reach fidelity 1 for a gate marked exact.
DecompositionEntry decompose_rotation(GateKind gate, double theta,
                                      int t_budget);

// Circuit-preserving cleanup: merges mergeable adjacent single-qubit gates
// (commuting them over two-qubit gates where the Pauli algebra allows),
// cancels inverse pairs, drops diagonal gates on fresh |0> wires and in
// front of terminal Z measurements.  Runs at most ten cycles and returns
// the fixed point with the fewest T gates; never increases the T count.
Circuit simplify(const Circuit& c);

// Rewrites each wire that starts as |0>, passes through single-qubit
// Cliffords only, and then meets its first T gate: the prefix becomes a
// direct magic-state initialization plus a Clifford, saving one T.
Circuit t_state_head_start(const Circuit& c);

// Compiles `logical` (gates over logical qubits, Measure = decoded logical
// Z readout) into a physical circuit.  Every logical qubit gets a 7-qubit
// block prepared through flagged RUS; one extra block serializes magic-state
// teleportation and QEC; barriers labelled "qec" lower to a QEC gadget on
// the blocks of the listed qubits (all blocks when unlisted).  Logical
// classical bits keep their indices.  Throws std::invalid_argument for
// gates without a gadget or decomposition.
Circuit lower(const Circuit& logical, const LoweringConfig& cfg,
              LoweringReport* report = nullptr);

// Positions (instruction indices in `logical`) that evenly partition the
// two-qubit logical gates into `cycles + 1` runs: the default placement for
// QEC barriers.
std::vector<int> default_qec_positions(const Circuit& logical, int cycles);

}  // namespace ftqc

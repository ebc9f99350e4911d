#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ftqc/pauli.hpp"

namespace ftqc {

// The [[7,1,3]] CSS code built from the [7,4,3] Hamming code.  The same 3x7
// binary parity-check matrix defines both the X-type and Z-type stabilizer
// generators.  Column j, read top row first, is the binary expansion of j+1,
// so a single flipped bit yields its own index (plus one) as the syndrome.
inline constexpr std::array<std::array<uint8_t, 7>, 3> kCheckMatrix = {{
    {0, 0, 0, 1, 1, 1, 1},
    {0, 1, 1, 0, 0, 1, 1},
    {1, 0, 1, 0, 1, 0, 1},
}};

// 3-bit syndrome of a 7-bit word, packed with row 0 as the MSB.
int syndrome_of(const std::array<uint8_t, 7>& bits);

struct DecodedMeasurement {
  int syndrome = 0;        // 0 means no correction applied
  int corrected_bit = -1;  // index flipped by the correction, or -1
  int logical = 0;         // parity of the corrected word
};

// Decodes a transversal 7-bit readout: correct the (unique) single flip the
// syndrome points at, then take the parity of the corrected word.
DecodedMeasurement decode_measurement(const std::array<uint8_t, 7>& bits);

// Minimum-weight representatives of the logical operators.  The full-weight
// products X_0..X_6 / Z_0..Z_6 reduce to weight 3 modulo the stabilizer.
PauliString logical_x_min();  // X on qubits {0,1,2}
PauliString logical_z_min();  // Z on qubits {0,1,2}

// All 64 elements of the stabilizer group as 7-qubit Pauli strings (phases
// dropped: CSS generators commute qubit-wise only up to sign, and weight
// reduction never needs the sign).
const std::vector<PauliString>& stabilizer_group();

// Minimum weight of p*S over all stabilizers S; with mod_logicals also over
// the four logical cosets (multiplying by X-bar, Z-bar, and their product).
int reduced_weight(const PauliString& p, bool mod_logicals);

// A minimizing representative found by reduced_weight (phase dropped).
PauliString weight_reduce(const PauliString& p, bool mod_logicals);

// Which logical coset p sits in: 0=stabilizer, 1=X-bar, 2=Y-bar, 3=Z-bar.
// Only meaningful when both syndromes of p vanish.
int logical_coset(const PauliString& p);

// Non-fault-tolerant encoder for the logical |0>: Hadamards on the pivot
// qubits (one per X-type generator) followed by CNOT fan-outs along the
// generator supports.  Indices are positions 0..6 within a block.
struct EncoderStep {
  bool is_h;
  int a;       // H target, or CNOT control
  int b = -1;  // CNOT target
};
const std::vector<EncoderStep>& encoder_steps();

// Syndromes of the X part and the Z part of p restricted to the 7 qubits
// listed in `block` (the X part trips Z-type checks and vice versa; both use
// the same check matrix).
struct BlockSyndromes {
  int x_syndrome = 0;  // syndrome sourced by X errors
  int z_syndrome = 0;  // syndrome sourced by Z errors
};
BlockSyndromes block_syndromes(const PauliString& p,
                               const std::array<int, 7>& block);

}  // namespace ftqc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ftqc {

// A Pauli string on n qubits, stored as i^phase * prod_j X^x[j] * prod_j Z^z[j]
// with the X factors to the left of the Z factors on each qubit.  Under this
// convention Y = i * X * Z, so a qubit with x=z=1 and phase=1 is exactly Y.
struct PauliString {
  std::vector<uint8_t> x;
  std::vector<uint8_t> z;
  int phase = 0;  // exponent of i, always reduced mod 4

  PauliString() = default;
  explicit PauliString(size_t n) : x(n, 0), z(n, 0) {}

  size_t num_qubits() const { return x.size(); }

  // Number of qubits acted on non-trivially.
  int weight() const;

  bool is_identity() const;

  // Sets qubit q to I/X/Y/Z given by `p` in {0,1,2,3} = {I,X,Y,Z},
  // adjusting the phase so the string gains exactly that factor.
  void set_pauli(size_t q, int p);

  // Returns 0/1/2/3 = I/X/Y/Z ignoring phase.
  int pauli_at(size_t q) const;

  // Text form like "+XIZ" or "-iYYI".
  std::string str() const;

  // Parses the output of str(); also accepts a bare letter string.
  static PauliString parse(const std::string& s);

  bool operator==(const PauliString& o) const {
    return x == o.x && z == o.z && phase == o.phase;
  }
};

// Product a*b with exact phase tracking.  Moving each Z in `a` past each X in
// `b` on the same qubit contributes a factor (-1), folded into the i-exponent.
PauliString pauli_mul(const PauliString& a, const PauliString& b);

bool pauli_commutes(const PauliString& a, const PauliString& b);

// Conjugation P -> G P G^dagger for the Clifford gate named by `g`
// (see circuit.hpp for GateKind); implemented in gates.cpp.

}  // namespace ftqc

#pragma once

#include <array>
#include <complex>
#include <string>

#include "ftqc/pauli.hpp"

namespace ftqc {

using cplx = std::complex<double>;

enum class GateKind {
  I, X, Y, Z, H, S, Sdg, T, Tdg, SX, SXdg,
  RZ, RX, RY,    // parameterized single-qubit rotations exp(-i theta P / 2)
  RXX,           // exp(-i theta XX / 2)
  CNOT, CZ, SWAP,
  CS,            // controlled-S
  CRY,           // controlled-RY(theta)
  RZZ,           // exp(-i theta ZZ / 2)
  MagicInit,     // prepare a fresh qubit in (|0> + e^{i pi/4} |1>)/sqrt(2)
};

const char* gate_name(GateKind g);
bool gate_name_lookup(const std::string& name, GateKind* out);

int gate_arity(GateKind g);          // number of qubit operands
bool gate_has_param(GateKind g);     // carries an angle
bool gate_is_clifford(GateKind g);   // conjugates Paulis to Paulis

using Mat2 = std::array<cplx, 4>;    // row major
using Mat4 = std::array<cplx, 16>;

Mat2 gate_matrix1(GateKind g, double theta = 0.0);
Mat4 gate_matrix2(GateKind g, double theta = 0.0);

// In-place Clifford conjugation p -> G p G^dagger on the listed qubits.
// Only valid for Clifford gate kinds.
void pauli_conjugate(GateKind g, const int* qubits, PauliString* p);

}  // namespace ftqc

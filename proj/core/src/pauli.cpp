#include "ftqc/pauli.hpp"

#include <stdexcept>

namespace ftqc {

int PauliString::weight() const {
  int w = 0;
  for (size_t i = 0; i < x.size(); ++i) w += (x[i] | z[i]) ? 1 : 0;
  return w;
}

bool PauliString::is_identity() const {
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] | z[i]) return false;
  return true;
}

void PauliString::set_pauli(size_t q, int p) {
  // Remove any existing Y phase contribution on this qubit first.
  if (x[q] && z[q]) phase = (phase + 3) & 3;
  switch (p) {
    case 0: x[q] = 0; z[q] = 0; break;
    case 1: x[q] = 1; z[q] = 0; break;
    case 2: x[q] = 1; z[q] = 1; phase = (phase + 1) & 3; break;
    case 3: x[q] = 0; z[q] = 1; break;
    default: throw std::invalid_argument("set_pauli: p must be 0..3");
  }
}

int PauliString::pauli_at(size_t q) const {
  if (x[q] && z[q]) return 2;
  if (x[q]) return 1;
  if (z[q]) return 3;
  return 0;
}

std::string PauliString::str() const {
  // Report each qubit as I/X/Y/Z; a Y contributes i to the stored phase, so
  // subtract those before printing the leading scalar.
  int k = phase;
  for (size_t q = 0; q < x.size(); ++q)
    if (x[q] && z[q]) k = (k + 3) & 3;
  static const char* scalars[4] = {"+", "+i", "-", "-i"};
  std::string out = scalars[k];
  static const char letters[5] = "IXYZ";
  for (size_t q = 0; q < x.size(); ++q) out += letters[pauli_at(q)];
  return out;
}

PauliString PauliString::parse(const std::string& s) {
  size_t i = 0;
  int k = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') k = 2;
    ++i;
  }
  if (i < s.size() && s[i] == 'i') {
    k = (k + 1) & 3;
    ++i;
  }
  PauliString p(s.size() - i);
  for (size_t q = 0; i < s.size(); ++i, ++q) {
    switch (s[i]) {
      case 'I': break;
      case 'X': p.set_pauli(q, 1); break;
      case 'Y': p.set_pauli(q, 2); break;
      case 'Z': p.set_pauli(q, 3); break;
      default: throw std::invalid_argument("PauliString::parse: bad char");
    }
  }
  p.phase = (p.phase + k) & 3;
  return p;
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("pauli_mul: size mismatch");
  PauliString r(a.num_qubits());
  int k = a.phase + b.phase;
  for (size_t q = 0; q < r.num_qubits(); ++q) {
    // Z_a X_b = -X_b Z_a on the same qubit.
    if (a.z[q] && b.x[q]) k += 2;
    r.x[q] = a.x[q] ^ b.x[q];
    r.z[q] = a.z[q] ^ b.z[q];
  }
  r.phase = k & 3;
  return r;
}

bool pauli_commutes(const PauliString& a, const PauliString& b) {
  int anti = 0;
  for (size_t q = 0; q < a.num_qubits(); ++q)
    anti ^= (a.z[q] & b.x[q]) ^ (a.x[q] & b.z[q]);
  return anti == 0;
}

}  // namespace ftqc

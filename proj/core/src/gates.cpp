#include "ftqc/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace ftqc {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;

struct GateInfo {
  const char* name;
  int arity;
  bool has_param;
  bool clifford;
};

const GateInfo kInfo[] = {
    {"i", 1, false, true},    {"x", 1, false, true},
    {"y", 1, false, true},    {"z", 1, false, true},
    {"h", 1, false, true},    {"s", 1, false, true},
    {"sdg", 1, false, true},  {"t", 1, false, false},
    {"tdg", 1, false, false}, {"sx", 1, false, true},
    {"sxdg", 1, false, true}, {"rz", 1, true, false},
    {"rx", 1, true, false},   {"ry", 1, true, false},
    {"rxx", 2, true, false},  {"cnot", 2, false, true},
    {"cz", 2, false, true},   {"swap", 2, false, true},
    {"cs", 2, false, false},  {"cry", 2, true, false},
    {"rzz", 2, true, false},  {"magic_init", 1, false, false},
};
}  // namespace

const char* gate_name(GateKind g) { return kInfo[static_cast<int>(g)].name; }

bool gate_name_lookup(const std::string& name, GateKind* out) {
  static const auto map = [] {
    std::unordered_map<std::string, GateKind> m;
    for (int i = 0; i <= static_cast<int>(GateKind::MagicInit); ++i)
      m[kInfo[i].name] = static_cast<GateKind>(i);
    return m;
  }();
  auto it = map.find(name);
  if (it == map.end()) return false;
  *out = it->second;
  return true;
}

int gate_arity(GateKind g) { return kInfo[static_cast<int>(g)].arity; }
bool gate_has_param(GateKind g) { return kInfo[static_cast<int>(g)].has_param; }
bool gate_is_clifford(GateKind g) {
  return kInfo[static_cast<int>(g)].clifford;
}

Mat2 gate_matrix1(GateKind g, double theta) {
  const cplx i(0, 1);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  switch (g) {
    case GateKind::I: return {1, 0, 0, 1};
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -i, i, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::H:
      return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    case GateKind::S: return {1, 0, 0, i};
    case GateKind::Sdg: return {1, 0, 0, -i};
    case GateKind::T: return {1, 0, 0, std::polar(1.0, M_PI / 4)};
    case GateKind::Tdg: return {1, 0, 0, std::polar(1.0, -M_PI / 4)};
    case GateKind::SX:
      return {cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5),
              cplx(0.5, 0.5)};
    case GateKind::SXdg:
      return {cplx(0.5, -0.5), cplx(0.5, 0.5), cplx(0.5, 0.5),
              cplx(0.5, -0.5)};
    case GateKind::RZ:
      return {std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)};
    case GateKind::RX: return {c, -i * s, -i * s, c};
    case GateKind::RY: return {c, -s, s, c};
    case GateKind::MagicInit:
      // Unitary sending |0> to the magic state; sims treat the instruction
      // as a fresh-state preparation and apply this to |0>.
      return {kInvSqrt2, kInvSqrt2,
              std::polar(kInvSqrt2, M_PI / 4), -std::polar(kInvSqrt2, M_PI / 4)};
    default:
      throw std::invalid_argument("gate_matrix1: not a 1-qubit gate");
  }
}

Mat4 gate_matrix2(GateKind g, double theta) {
  const cplx i(0, 1);
  switch (g) {
    case GateKind::CNOT:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
    case GateKind::CZ:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
    case GateKind::SWAP:
      return {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
    case GateKind::RXX: {
      const cplx c = std::cos(theta / 2), s = -i * std::sin(theta / 2);
      return {c, 0, 0, s, 0, c, s, 0, 0, s, c, 0, s, 0, 0, c};
    }
    case GateKind::CS:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, i};
    case GateKind::CRY: {
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, c, -s, 0, 0, s, c};
    }
    case GateKind::RZZ: {
      const cplx em = std::polar(1.0, -theta / 2), ep = std::polar(1.0, theta / 2);
      return {em, 0, 0, 0, 0, ep, 0, 0, 0, 0, ep, 0, 0, 0, 0, em};
    }
    default:
      throw std::invalid_argument("gate_matrix2: not a 2-qubit gate");
  }
}

namespace {

// Images of X and Z under single-qubit Clifford conjugation, as 1-qubit
// strings in the i^phase X^x Z^z convention (e.g. -Y = i^3 X Z).
struct Img {
  uint8_t x, z;
  int phase;
};
struct Imgs {
  Img ix, iz;
};

Imgs single_images(GateKind g) {
  switch (g) {
    case GateKind::I: return {{1, 0, 0}, {0, 1, 0}};
    case GateKind::X: return {{1, 0, 0}, {0, 1, 2}};
    case GateKind::Y: return {{1, 0, 2}, {0, 1, 2}};
    case GateKind::Z: return {{1, 0, 2}, {0, 1, 0}};
    case GateKind::H: return {{0, 1, 0}, {1, 0, 0}};
    case GateKind::S: return {{1, 1, 1}, {0, 1, 0}};    // X -> Y
    case GateKind::Sdg: return {{1, 1, 3}, {0, 1, 0}};  // X -> -Y
    case GateKind::SX: return {{1, 0, 0}, {1, 1, 3}};   // Z -> -Y
    case GateKind::SXdg: return {{1, 0, 0}, {1, 1, 1}};
    default:
      throw std::invalid_argument("pauli_conjugate: not a Clifford gate");
  }
}

void conj_single(GateKind g, int q, PauliString* p) {
  uint8_t px = p->x[q], pz = p->z[q];
  if (!px && !pz) return;
  Imgs im = single_images(g);
  uint8_t rx = 0, rz = 0;
  int ph = 0;
  if (px) {
    rx ^= im.ix.x;
    rz ^= im.ix.z;
    ph += im.ix.phase;
  }
  if (pz) {
    // Multiplying on the right: move the Z-image's X past our current Z.
    if (rz && im.iz.x) ph += 2;
    rx ^= im.iz.x;
    rz ^= im.iz.z;
    ph += im.iz.phase;
  }
  p->x[q] = rx;
  p->z[q] = rz;
  p->phase = (p->phase + ph) & 3;
}

}  // namespace

void pauli_conjugate(GateKind g, const int* qubits, PauliString* p) {
  switch (g) {
    case GateKind::CNOT: {
      int c = qubits[0], t = qubits[1];
      p->x[t] ^= p->x[c];
      p->z[c] ^= p->z[t];
      return;
    }
    case GateKind::SWAP: {
      int a = qubits[0], b = qubits[1];
      std::swap(p->x[a], p->x[b]);
      std::swap(p->z[a], p->z[b]);
      return;
    }
    case GateKind::CZ: {
      // CZ = H(t) CNOT(c,t) H(t); compose verified primitives to keep the
      // sign bookkeeping in one place.
      int t = qubits[1];
      conj_single(GateKind::H, t, p);
      pauli_conjugate(GateKind::CNOT, qubits, p);
      conj_single(GateKind::H, t, p);
      return;
    }
    default:
      conj_single(g, qubits[0], p);
  }
}

}  // namespace ftqc

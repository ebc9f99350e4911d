#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "ftqc/gates.hpp"
#include "ftqc/lower.hpp"

namespace ftqc {
namespace {

Mat2 mul2(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

bool same_up_to_phase(const Mat2& a, const Mat2& b) {
  // Phase-align on the largest entry of b, then compare.
  int big = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(b[i]) > std::abs(b[big])) big = i;
  if (std::abs(a[big]) < 1e-12) return false;
  cplx ph = b[big] / a[big];
  if (std::abs(std::abs(ph) - 1.0) > 1e-9) return false;
  for (int i = 0; i < 4; ++i)
    if (std::abs(a[i] * ph - b[i]) > 1e-9) return false;
  return true;
}

bool is_identity_up_to_phase(const Mat2& m) {
  return same_up_to_phase(m, Mat2{1, 0, 0, 1});
}

// Named gates a merged product may collapse back into, cheapest first.
const GateKind kNamed[] = {GateKind::X,  GateKind::Y,    GateKind::Z,
                           GateKind::H,  GateKind::S,    GateKind::Sdg,
                           GateKind::SX, GateKind::SXdg, GateKind::T,
                           GateKind::Tdg};

int t_weight(GateKind g) { return g == GateKind::T || g == GateKind::Tdg; }

bool diagonal_gate(const Instruction& in) {
  switch (in.gate) {
    case GateKind::I:
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::RZ:
      return true;
    default:
      return false;
  }
}

bool one_qubit_unitary(const Instruction& in) {
  return in.kind == InstrKind::Gate && gate_arity(in.gate) == 1 &&
         in.gate != GateKind::MagicInit;
}

// Whether a single-qubit gate on `q` commutes past a two-qubit gate.
bool commutes_past(const Instruction& g1, const Instruction& g2, int q) {
  if (g2.kind != InstrKind::Gate) return false;
  bool diag = diagonal_gate(g1);
  switch (g2.gate) {
    case GateKind::CZ:
    case GateKind::CS:
    case GateKind::RZZ:
      return diag;
    case GateKind::CNOT:
      if (q == g2.qubits[0]) return diag;
      // Target: X-axis gates commute through.
      return g1.gate == GateKind::X || g1.gate == GateKind::SX ||
             g1.gate == GateKind::SXdg || g1.gate == GateKind::RX;
    default:
      return false;
  }
}

long count_t(const Circuit& c) {
  long n = 0;
  preorder_walk(c, [&](const Instruction& in, int) {
    if (in.kind == InstrKind::Gate) n += t_weight(in.gate);
  });
  return n;
}

// One cleanup cycle over a flat instruction list (control-flow bodies are
// handled recursively by the caller).  Returns true when something changed.
bool cycle(std::vector<Instruction>& v, int num_qubits) {
  bool changed = false;

  // Pass 1: merge mergeable single-qubit gates.  For each 1q gate, scan left
  // past instructions it commutes with for a partner on the same qubit.
  for (size_t i = 0; i < v.size(); ++i) {
    if (!one_qubit_unitary(v[i])) continue;
    int q = v[i].qubits[0];
    for (size_t j = i; j-- > 0;) {
      const Instruction& w = v[j];
      bool touches = false;
      if (w.kind == InstrKind::Gate || w.kind == InstrKind::Measure ||
          w.kind == InstrKind::Reset || w.kind == InstrKind::IdealPrepZero ||
          w.kind == InstrKind::NoiseMarker) {
        for (int wq : w.qubits) touches |= wq == q;
        if (w.kind == InstrKind::IdealPrepZero && !w.qubits.empty())
          ;  // qubit list already checked
      } else {
        break;  // opaque control flow: stop the scan
      }
      if (!touches) continue;
      if (w.kind == InstrKind::Gate && one_qubit_unitary(w)) {
        Mat2 prod = mul2(gate_matrix1(v[i].gate, v[i].param),
                         gate_matrix1(w.gate, w.param));
        int budget = t_weight(v[i].gate) + t_weight(w.gate);
        if (is_identity_up_to_phase(prod)) {
          v.erase(v.begin() + i);
          v.erase(v.begin() + j);
          return true;
        }
        bool merged = false;
        for (GateKind g : kNamed) {
          if (t_weight(g) > budget) continue;
          if (same_up_to_phase(gate_matrix1(g), prod)) {
            v[j].gate = g;
            v[j].param = 0;
            v.erase(v.begin() + i);
            merged = true;
            break;
          }
        }
        if (merged) return true;
        break;  // adjacent but unmergeable: leave both
      }
      if (w.kind == InstrKind::Gate && gate_arity(w.gate) == 2) {
        if (commutes_past(v[i], w, q)) continue;  // keep scanning left
        break;
      }
      break;  // measure/reset/prep on this qubit blocks the scan
    }
  }

  // Pass 2: cancel adjacent self-inverse two-qubit pairs.
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    const Instruction& a = v[i];
    if (a.kind != InstrKind::Gate || gate_arity(a.gate) != 2) continue;
    if (a.gate != GateKind::CNOT && a.gate != GateKind::CZ &&
        a.gate != GateKind::SWAP)
      continue;
    for (size_t j = i + 1; j < v.size(); ++j) {
      const Instruction& b = v[j];
      bool touches = false;
      if (b.kind == InstrKind::Gate) {
        for (int bq : b.qubits)
          touches |= bq == a.qubits[0] || bq == a.qubits[1];
      } else {
        break;
      }
      if (!touches) continue;
      bool same = b.gate == a.gate &&
                  ((b.qubits == a.qubits) ||
                   (a.gate != GateKind::CNOT && b.qubits[0] == a.qubits[1] &&
                    b.qubits[1] == a.qubits[0]));
      if (same) {
        v.erase(v.begin() + j);
        v.erase(v.begin() + i);
        return true;
      }
      break;
    }
  }

  // Pass 3: diagonal gates on fresh |0> wires do nothing.
  {
    std::vector<uint8_t> fresh(num_qubits, 1);
    for (size_t i = 0; i < v.size(); ++i) {
      Instruction& in = v[i];
      if (in.kind == InstrKind::Gate && one_qubit_unitary(in) &&
          diagonal_gate(in) && fresh[in.qubits[0]]) {
        v.erase(v.begin() + i);
        return true;
      }
      if (in.kind == InstrKind::Reset) {
        fresh[in.qubits[0]] = 1;
        continue;
      }
      for (int q : in.qubits) fresh[q] = 0;
    }
  }

  // Pass 4: diagonal gates straight before a terminal Z measurement.
  for (size_t i = 0; i < v.size(); ++i) {
    if (!(v[i].kind == InstrKind::Gate && one_qubit_unitary(v[i]) &&
          diagonal_gate(v[i])))
      continue;
    int q = v[i].qubits[0];
    bool kill = false;
    for (size_t j = i + 1; j < v.size(); ++j) {
      const Instruction& w = v[j];
      bool touches = false;
      for (int wq : w.qubits) touches |= wq == q;
      if (!touches) continue;
      kill = w.kind == InstrKind::Measure;
      break;
    }
    if (kill) {
      // Only if nothing after the measurement reuses the qubit.
      v.erase(v.begin() + i);
      return true;
    }
  }

  return changed;
}

void simplify_block(std::vector<Instruction>& v, int num_qubits) {
  for (auto& in : v)
    if (!in.body.empty()) simplify_block(in.body, num_qubits);
  while (cycle(v, num_qubits)) {
  }
}

}  // namespace

Circuit simplify(const Circuit& c) {
  Circuit best = c;
  long best_t = count_t(best);
  Circuit cur = c;
  for (int round = 0; round < 10; ++round) {
    Circuit next = cur;
    simplify_block(next.instrs, next.num_qubits);
    long t = count_t(next);
    bool same = t == count_t(cur) && next.instrs.size() == cur.instrs.size();
    if (t < best_t ||
        (t == best_t && next.instrs.size() < best.instrs.size())) {
      best = next;
      best_t = t;
    }
    if (same) break;
    cur = std::move(next);
  }
  return best;
}

Circuit t_state_head_start(const Circuit& c) {
  Circuit out = c;
  auto& v = out.instrs;
  for (int q = 0; q < out.num_qubits; ++q) {
    // Find the wire's leading run: single-qubit Cliffords then a T/Tdg.
    std::vector<size_t> prefix;
    size_t tpos = SIZE_MAX;
    for (size_t i = 0; i < v.size(); ++i) {
      const Instruction& in = v[i];
      bool touches = false;
      for (int wq : in.qubits) touches |= wq == q;
      if (in.kind == InstrKind::Cond || in.kind == InstrKind::Rus) break;
      if (!touches) continue;
      if (in.kind == InstrKind::Reset && prefix.empty()) continue;  // |0> init
      if (in.kind != InstrKind::Gate) break;
      if (gate_arity(in.gate) != 1) break;
      if (in.gate == GateKind::T || in.gate == GateKind::Tdg) {
        tpos = i;
        break;
      }
      if (!gate_is_clifford(in.gate)) break;
      prefix.push_back(i);
    }
    if (tpos == SIZE_MAX) continue;

    // The state after the prefix and the T: psi = T^(+-1) C |0>.
    Mat2 m = {1, 0, 0, 1};
    for (size_t i : prefix)
      m = mul2(gate_matrix1(v[i].gate, v[i].param), m);
    m = mul2(gate_matrix1(v[tpos].gate), m);
    cplx psi0 = m[0], psi1 = m[2];

    // If the T acted diagonally (Z-axis input), drop it outright; otherwise
    // find a Clifford word D with D |T-state> = psi and restart the wire
    // from a direct magic-state initialization.
    Mat2 magic = gate_matrix1(GateKind::MagicInit);
    cplx t0 = magic[0], t1 = magic[2];
    static const std::vector<std::vector<GateKind>> kCliffWords = [] {
      std::vector<std::vector<GateKind>> words = {{}};
      const GateKind gens[] = {GateKind::H, GateKind::S, GateKind::Sdg,
                               GateKind::X, GateKind::Y, GateKind::Z,
                               GateKind::SX, GateKind::SXdg};
      // All <=3 letter words cover the 24 single-qubit Cliffords.
      for (GateKind a : gens) words.push_back({a});
      for (GateKind a : gens)
        for (GateKind b : gens) words.push_back({a, b});
      for (GateKind a : gens)
        for (GateKind b : gens)
          for (GateKind d : gens) words.push_back({a, b, d});
      return words;
    }();

    bool z_axis = std::abs(psi0) < 1e-12 || std::abs(psi1) < 1e-12;
    std::vector<Instruction> repl;
    if (z_axis) {
      for (size_t i : prefix) repl.push_back(v[i]);
    } else {
      const std::vector<GateKind>* found = nullptr;
      for (const auto& word : kCliffWords) {
        Mat2 d = {1, 0, 0, 1};
        for (GateKind g : word) d = mul2(gate_matrix1(g), d);
        cplx a0 = d[0] * t0 + d[1] * t1, a1 = d[2] * t0 + d[3] * t1;
        // Proportionality check psi ~ (a0, a1).
        if (std::abs(a0 * psi1 - a1 * psi0) < 1e-9) {
          found = &word;
          break;
        }
      }
      if (!found) continue;  // should not happen for stabilizer inputs
      Instruction init;
      init.kind = InstrKind::Gate;
      init.gate = GateKind::MagicInit;
      init.qubits = {q};
      repl.push_back(init);
      for (GateKind g : *found) {
        Instruction in;
        in.kind = InstrKind::Gate;
        in.gate = g;
        in.qubits = {q};
        repl.push_back(in);
      }
    }

    // Splice: drop prefix gates and the T, insert the replacement at tpos.
    std::vector<Instruction> nv;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i == tpos) {
        nv.insert(nv.end(), repl.begin(), repl.end());
        continue;
      }
      bool drop = false;
      for (size_t p : prefix) drop |= p == i;
      if (!drop) nv.push_back(v[i]);
    }
    v = std::move(nv);
  }
  return out;
}

}  // namespace ftqc

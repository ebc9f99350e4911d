#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ftqc/gates.hpp"
#include "ftqc/lower.hpp"

namespace ftqc {
namespace {

constexpr double kPi = 3.14159265358979323846;

Instruction gate1(GateKind g, int q) {
  Instruction in;
  in.kind = InstrKind::Gate;
  in.gate = g;
  in.qubits = {q};
  return in;
}

Instruction gate2(GateKind g, int q0, int q1) {
  Instruction in;
  in.kind = InstrKind::Gate;
  in.gate = g;
  in.qubits = {q0, q1};
  return in;
}

Mat2 mul2(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Average channel fidelity between unitaries, d = 2: (|tr U^dag V|^2 + d) /
// (d^2 + d).
double channel_fid2(const Mat2& u, const Mat2& v) {
  cplx tr = std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1] +
            std::conj(u[2]) * v[2] + std::conj(u[3]) * v[3];
  return (std::norm(tr) + 2.0) / 6.0;
}

double channel_fid4(const cplx* u, const cplx* v) {
  cplx tr = 0;
  for (int i = 0; i < 16; ++i) tr += std::conj(u[i]) * v[i];
  return (std::norm(tr) + 4.0) / 20.0;
}

// Phase-invariant fingerprint of a 2x2 unitary: rotate so the largest entry
// is real positive, then round.
uint64_t key2(const Mat2& m) {
  int big = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(m[i]) > std::abs(m[big])) big = i;
  cplx ph = std::abs(m[big]) / m[big];
  uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < 4; ++i) {
    cplx z = m[i] * ph;
    for (double part : {z.real(), z.imag()}) {
      auto r = (int64_t)llround(part * 1e9);
      h = (h ^ (uint64_t)r) * 1099511628211ull;
    }
  }
  return h;
}

// One-qubit Clifford+T words with a bounded T count, found breadth first
// over the named gate set with unitary-level deduplication.
struct Word {
  Mat2 m;
  std::vector<GateKind> seq;
  int t = 0;
};

const std::vector<GateKind> kOneQ = {GateKind::H,  GateKind::S,
                                     GateKind::Sdg, GateKind::X,
                                     GateKind::Y,  GateKind::Z,
                                     GateKind::SX, GateKind::SXdg};

std::vector<Word> clifford_t_words(int t_budget, size_t beam) {
  std::vector<Word> words;
  std::unordered_set<uint64_t> seen;
  Word id;
  id.m = {1, 0, 0, 1};
  words.push_back(id);
  seen.insert(key2(id.m));
  size_t lo = 0;
  while (lo < words.size()) {
    size_t hi = words.size();
    for (size_t i = lo; i < hi; ++i) {
      if (words.size() > beam) break;
      Word base = words[i];
      for (GateKind g : kOneQ) {
        Word w;
        w.m = mul2(gate_matrix1(g), base.m);
        w.t = base.t;
        if (!seen.insert(key2(w.m)).second) continue;
        w.seq = base.seq;
        w.seq.push_back(g);
        words.push_back(w);
      }
      for (GateKind g : {GateKind::T, GateKind::Tdg}) {
        if (base.t >= t_budget) continue;
        Word w;
        w.m = mul2(gate_matrix1(g), base.m);
        w.t = base.t + 1;
        if (!seen.insert(key2(w.m)).second) continue;
        w.seq = base.seq;
        w.seq.push_back(g);
        words.push_back(w);
      }
    }
    lo = hi;
    if (words.size() > beam) break;
  }
  return words;
}

std::vector<Instruction> word_instrs(const Word& w, int q) {
  std::vector<Instruction> out;
  for (GateKind g : w.seq) out.push_back(gate1(g, q));
  return out;
}

DecompositionEntry rz_table(double theta, int k) {
  // RZ(k pi/4) equals T^k up to a global phase.
  static const std::vector<std::vector<GateKind>> kSeq = {
      {},
      {GateKind::T},
      {GateKind::S},
      {GateKind::S, GateKind::T},
      {GateKind::Z},
      {GateKind::Z, GateKind::T},
      {GateKind::Sdg},
      {GateKind::Tdg}};
  DecompositionEntry e;
  e.source = GateKind::RZ;
  e.theta = theta;
  for (GateKind g : kSeq[((k % 8) + 8) % 8]) {
    e.replacement.push_back(gate1(g, 0));
    if (g == GateKind::T || g == GateKind::Tdg) ++e.t_count;
  }
  e.fidelity = 1.0;
  return e;
}

DecompositionEntry controlled_s() {
  DecompositionEntry e;
  e.source = GateKind::CS;
  e.replacement = {gate1(GateKind::T, 0),      gate1(GateKind::T, 1),
                   gate2(GateKind::CNOT, 0, 1), gate1(GateKind::Tdg, 1),
                   gate2(GateKind::CNOT, 0, 1)};
  e.t_count = 3;
  e.fidelity = 1.0;
  return e;
}

void mul4(const cplx* a, const cplx* b, cplx* out) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0;
      for (int k = 0; k < 4; ++k) s += a[i * 4 + k] * b[k * 4 + j];
      out[i * 4 + j] = s;
    }
}

// Kron of 2x2 onto qubit 1 (the rotation target) of a 4x4, identity on 0.
void embed_target(const Mat2& m, cplx* out) {
  for (int i = 0; i < 16; ++i) out[i] = 0;
  for (int b = 0; b < 2; ++b)  // control basis value
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[(b * 2 + i) * 4 + (b * 2 + j)] = m[i * 2 + j];
}

DecompositionEntry controlled_ry(double theta, int t_budget) {
  // The target is block diagonal per control value, so conjugating a target
  // rotation by CNOTs stays inside the family V (CNOT) W (CNOT): search the
  // 1-qubit Clifford+T words for the V, W pair with the best channel
  // fidelity subject to the T budget.
  cplx target[16] = {0};
  target[0] = target[5] = 1;
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  target[10] = c;
  target[11] = -s;
  target[14] = s;
  target[15] = c;

  auto words = clifford_t_words(std::min(t_budget, 2), 40000);
  Mat4 cx = gate_matrix2(GateKind::CNOT);
  DecompositionEntry best;
  best.fidelity = -1;
  cplx vm[16], t1[16], wm[16], t2[16], full[16];
  for (const auto& v : words) {
    if (v.t > t_budget) continue;
    embed_target(v.m, vm);
    mul4(vm, cx.data(), t1);  // V after first CNOT
    for (const auto& w : words) {
      if (v.t + w.t > t_budget) continue;
      embed_target(w.m, wm);
      mul4(wm, t1, t2);
      mul4(cx.data(), t2, full);
      double f = channel_fid4(target, full);
      if (f > best.fidelity) {
        best.fidelity = f;
        best.replacement.clear();
        auto lo = word_instrs(v, 1);
        best.replacement.push_back(gate2(GateKind::CNOT, 0, 1));
        best.replacement.insert(best.replacement.end(), lo.begin(), lo.end());
        best.replacement.push_back(gate2(GateKind::CNOT, 0, 1));
        auto hi = word_instrs(w, 1);
        best.replacement.insert(best.replacement.end(), hi.begin(), hi.end());
        best.t_count = v.t + w.t;
      }
    }
  }
  best.source = GateKind::CRY;
  best.theta = theta;
  return best;
}

DecompositionEntry rz_search(double theta, int t_budget) {
  Mat2 target = gate_matrix1(GateKind::RZ, theta);
  auto words = clifford_t_words(t_budget, 200000);
  DecompositionEntry e;
  e.source = GateKind::RZ;
  e.theta = theta;
  double best = -1;
  const Word* pick = nullptr;
  for (const auto& w : words) {
    double f = channel_fid2(target, w.m);
    if (f > best + 1e-15 ||
        (f > best - 1e-15 && pick && w.t < pick->t)) {
      best = f;
      pick = &w;
    }
  }
  e.replacement = word_instrs(*pick, 0);
  e.fidelity = best;
  e.t_count = pick->t;
  return e;
}

}  // namespace

DecompositionEntry decompose_rotation(GateKind gate, double theta,
                                      int t_budget) {
  if (t_budget < 0 || t_budget > 12)
    throw std::invalid_argument("t_budget out of range [0, 12]");
  if (gate == GateKind::RZ) {
    double k = theta / (kPi / 4);
    double kr = std::round(k);
    if (std::abs(k - kr) < 1e-9) {
      auto e = rz_table(theta, (int)(((long)kr) % 8));
      if (e.t_count > t_budget)
        throw std::runtime_error("t_budget too small for exact RZ entry");
      return e;
    }
    return rz_search(theta, t_budget);
  }
  if (gate == GateKind::CS) {
    if (t_budget < 3)
      throw std::runtime_error("controlled-S needs a T budget of 3");
    return controlled_s();
  }
  if (gate == GateKind::CRY) return controlled_ry(theta, t_budget);
  if (gate == GateKind::RZZ) {
    // RZZ(theta) = CNOT (I ⊗ RZ(theta)) CNOT.
    DecompositionEntry rz = decompose_rotation(GateKind::RZ, theta, t_budget);
    DecompositionEntry e;
    e.source = GateKind::RZZ;
    e.theta = theta;
    e.fidelity = rz.fidelity;
    e.t_count = rz.t_count;
    e.replacement.push_back(gate2(GateKind::CNOT, 0, 1));
    for (auto in : rz.replacement) {
      in.qubits = {1};
      e.replacement.push_back(in);
    }
    e.replacement.push_back(gate2(GateKind::CNOT, 0, 1));
    return e;
  }
  throw std::invalid_argument("decompose_rotation: unsupported gate");
}

}  // namespace ftqc

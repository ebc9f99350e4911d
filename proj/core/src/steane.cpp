#include "ftqc/steane.hpp"

#include <stdexcept>

namespace ftqc {

int syndrome_of(const std::array<uint8_t, 7>& bits) {
  int s = 0;
  for (int r = 0; r < 3; ++r) {
    int b = 0;
    for (int c = 0; c < 7; ++c) b ^= kCheckMatrix[r][c] & bits[c];
    s = (s << 1) | b;
  }
  return s;
}

DecodedMeasurement decode_measurement(const std::array<uint8_t, 7>& bits) {
  DecodedMeasurement d;
  d.syndrome = syndrome_of(bits);
  int parity = 0;
  for (int c = 0; c < 7; ++c) parity ^= bits[c];
  if (d.syndrome != 0) {
    d.corrected_bit = d.syndrome - 1;
    parity ^= 1;
  }
  d.logical = parity;
  return d;
}

PauliString logical_x_min() {
  PauliString p(7);
  for (int q = 0; q < 3; ++q) p.x[q] = 1;
  return p;
}

PauliString logical_z_min() {
  PauliString p(7);
  for (int q = 0; q < 3; ++q) p.z[q] = 1;
  return p;
}

const std::vector<PauliString>& stabilizer_group() {
  static const std::vector<PauliString> group = [] {
    std::vector<PauliString> g;
    g.reserve(64);
    for (int mx = 0; mx < 8; ++mx) {
      for (int mz = 0; mz < 8; ++mz) {
        PauliString p(7);
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 7; ++c) {
            if (mx >> r & 1) p.x[c] ^= kCheckMatrix[r][c];
            if (mz >> r & 1) p.z[c] ^= kCheckMatrix[r][c];
          }
        }
        p.phase = 0;
        g.push_back(p);
      }
    }
    return g;
  }();
  return group;
}

namespace {

int xz_weight(const PauliString& p) {
  int w = 0;
  for (size_t i = 0; i < p.x.size(); ++i) w += (p.x[i] | p.z[i]) ? 1 : 0;
  return w;
}

PauliString reduce_impl(const PauliString& p, bool mod_logicals, int* best_w) {
  if (p.num_qubits() != 7)
    throw std::invalid_argument("weight_reduce: expects 7 qubits");
  std::vector<PauliString> cosets;
  cosets.push_back(PauliString(7));
  if (mod_logicals) {
    cosets.push_back(logical_x_min());
    cosets.push_back(logical_z_min());
    cosets.push_back(pauli_mul(logical_x_min(), logical_z_min()));
  }
  PauliString best = p;
  best.phase = 0;
  int bw = xz_weight(p);
  for (const auto& l : cosets) {
    for (const auto& s : stabilizer_group()) {
      PauliString cand = pauli_mul(pauli_mul(p, l), s);
      cand.phase = 0;
      int w = xz_weight(cand);
      if (w < bw) {
        bw = w;
        best = cand;
      }
    }
  }
  *best_w = bw;
  return best;
}

}  // namespace

int reduced_weight(const PauliString& p, bool mod_logicals) {
  int w = 0;
  reduce_impl(p, mod_logicals, &w);
  return w;
}

PauliString weight_reduce(const PauliString& p, bool mod_logicals) {
  int w = 0;
  return reduce_impl(p, mod_logicals, &w);
}

int logical_coset(const PauliString& p) {
  // Anticommutation with Z-bar detects an X-bar component and vice versa.
  bool has_x = !pauli_commutes(p, logical_z_min());
  bool has_z = !pauli_commutes(p, logical_x_min());
  if (has_x && has_z) return 2;
  if (has_x) return 1;
  if (has_z) return 3;
  return 0;
}

const std::vector<EncoderStep>& encoder_steps() {
  // Pivots 3, 1, 0 each appear in exactly one X-type generator, so the
  // fan-outs commute into a plain superposition over the even subcode.
  static const std::vector<EncoderStep> steps = {
      {true, 3},  {false, 3, 4}, {false, 3, 5}, {false, 3, 6},
      {true, 1},  {false, 1, 2}, {false, 1, 5}, {false, 1, 6},
      {true, 0},  {false, 0, 2}, {false, 0, 4}, {false, 0, 6},
  };
  return steps;
}

BlockSyndromes block_syndromes(const PauliString& p,
                               const std::array<int, 7>& block) {
  BlockSyndromes s;
  std::array<uint8_t, 7> xs{}, zs{};
  for (int c = 0; c < 7; ++c) {
    xs[c] = p.x[block[c]];
    zs[c] = p.z[block[c]];
  }
  s.x_syndrome = syndrome_of(xs);
  s.z_syndrome = syndrome_of(zs);
  return s;
}

}  // namespace ftqc

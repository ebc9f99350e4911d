#include <doctest.h>

#include <array>
#include <vector>

#include "ftqc/steane.hpp"

using namespace ftqc;

namespace {

// All 16 words of the Hamming [7,4] code (zero syndrome), split by parity:
// even-weight words are |0>-side codewords, odd-weight the |1>-side.
std::vector<std::array<uint8_t, 7>> hamming_codewords() {
  std::vector<std::array<uint8_t, 7>> out;
  for (int w = 0; w < 128; ++w) {
    std::array<uint8_t, 7> bits{};
    for (int j = 0; j < 7; ++j) bits[j] = (w >> j) & 1;
    if (syndrome_of(bits) == 0) out.push_back(bits);
  }
  return out;
}

}  // namespace

TEST_CASE("check matrix columns read as their own index plus one") {
  for (int j = 0; j < 7; ++j) {
    std::array<uint8_t, 7> bits{};
    bits[j] = 1;
    CHECK(syndrome_of(bits) == j + 1);
  }
  CHECK(hamming_codewords().size() == 16);
}

TEST_CASE("decode over every codeword and every single flip") {
  for (const auto& cw : hamming_codewords()) {
    int parity = 0;
    for (int j = 0; j < 7; ++j) parity ^= cw[j];
    auto clean = decode_measurement(cw);
    CHECK(clean.syndrome == 0);
    CHECK(clean.corrected_bit == -1);
    CHECK(clean.logical == parity);
    for (int j = 0; j < 7; ++j) {
      auto flipped = cw;
      flipped[j] ^= 1;
      auto d = decode_measurement(flipped);
      CHECK(d.syndrome == j + 1);
      CHECK(d.corrected_bit == j);
      CHECK(d.logical == parity);
    }
  }
}

TEST_CASE("stabilizer group structure") {
  const auto& g = stabilizer_group();
  CHECK(g.size() == 64);
  // Every element commutes with every other and with both logicals.
  for (const auto& a : g) {
    CHECK(pauli_commutes(a, logical_x_min()));
    CHECK(pauli_commutes(a, logical_z_min()));
    CHECK((a.weight() == 0 || a.weight() >= 3));
  }
  // X-type elements alone form the even subcode: weights 0 or 4.
  int wt_counts[8] = {0};
  for (const auto& a : g) {
    bool xtype = true;
    for (int q = 0; q < 7; ++q)
      if (a.z[q]) xtype = false;
    if (xtype) wt_counts[a.weight()]++;
  }
  CHECK(wt_counts[0] == 1);
  CHECK(wt_counts[4] == 7);
}

TEST_CASE("weight reduction") {
  // Full-weight logicals reduce to 3, and to 0 once logicals are modded out.
  PauliString full_x(7), full_z(7);
  for (int q = 0; q < 7; ++q) {
    full_x.x[q] = 1;
    full_z.z[q] = 1;
  }
  CHECK(reduced_weight(full_x, false) == 3);
  CHECK(reduced_weight(full_z, false) == 3);
  CHECK(reduced_weight(full_x, true) == 0);
  CHECK(reduced_weight(full_z, true) == 0);
  CHECK(logical_coset(full_x) == 1);
  CHECK(logical_coset(full_z) == 3);
  CHECK(logical_coset(pauli_mul(full_x, full_z)) == 2);

  // Invariance under stabilizer multiplication, spot-checked.
  uint64_t s = 99;
  auto next = [&] { s = s * 6364136223846793005ull + 1442695040888963407ull; return s >> 33; };
  for (int t = 0; t < 50; ++t) {
    PauliString p(7);
    for (int q = 0; q < 7; ++q) p.set_pauli(q, (int)(next() % 4));
    const auto& grp = stabilizer_group();
    PauliString ps = pauli_mul(p, grp[next() % grp.size()]);
    CHECK(reduced_weight(p, false) == reduced_weight(ps, false));
    CHECK(reduced_weight(p, true) == reduced_weight(ps, true));
    CHECK(logical_coset(p) == logical_coset(ps));
    PauliString r = weight_reduce(p, false);
    CHECK(r.weight() == reduced_weight(p, false));
    CHECK(logical_coset(r) == logical_coset(p));
  }
}

TEST_CASE("mixed two-qubit X_i Z_j errors are all correctable") {
  // CSS decoding treats the X and Z components independently, so every
  // X_i Z_j (including i == j, a Y) lands back in the stabilizer after
  // syndrome-directed correction.
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      PauliString e(7);
      e.x[i] = 1;
      e.z[j] = 1;
      std::array<int, 7> block = {0, 1, 2, 3, 4, 5, 6};
      auto s = block_syndromes(e, block);
      CHECK(s.x_syndrome == i + 1);
      CHECK(s.z_syndrome == j + 1);
      PauliString corr(7);
      corr.x[s.x_syndrome - 1] ^= 1;
      corr.z[s.z_syndrome - 1] ^= 1;
      PauliString resid = pauli_mul(e, corr);
      CHECK(logical_coset(resid) == 0);
      CHECK(reduced_weight(resid, false) == 0);
    }
  }
}

TEST_CASE("block syndromes on permuted blocks") {
  std::array<int, 7> block = {8, 6, 4, 2, 10, 12, 0};
  PauliString e(14);
  e.x[block[5]] = 1;  // X on block position 5
  e.z[block[2]] = 1;  // Z on block position 2
  auto s = block_syndromes(e, block);
  CHECK(s.x_syndrome == 6);
  CHECK(s.z_syndrome == 3);
}

#pragma once

#include <cstdint>
#include <vector>

#include "ftqc/pauli.hpp"
#include "ftqc/rng.hpp"

namespace ftqc {

// Stabilizer tableau with destabilizer rows, in the standard binary
// (x|z|sign) form.  Rows 0..n-1 are destabilizers, n..2n-1 stabilizers.
class Tableau {
 public:
  explicit Tableau(int n);

  int n() const { return n_; }

  void h(int q);
  void s(int q);
  void sdg(int q) { s(q); s(q); s(q); }
  void cnot(int c, int t);
  void cz(int c, int t) { h(t); cnot(c, t); h(t); }
  void swap(int a, int b) { cnot(a, b); cnot(b, a); cnot(a, b); }
  void x(int q);
  void y(int q);
  void z(int q);
  void sx(int q) { h(q); s(q); h(q); }
  void sxdg(int q) { h(q); sdg(q); h(q); }

  // Z-basis measurement; consumes one RNG draw only when the outcome is
  // indeterminate.
  int measure(int q, CounterRng& rng);
  void reset(int q, CounterRng& rng) {
    if (measure(q, rng)) x(q);
  }

 private:
  int g_accum(int i, int k);     // phase function summed over qubits
  void rowsum(int h, int i);
  inline uint8_t& xb(int row, int q) { return xz_[row * stride_ + q]; }
  inline uint8_t& zb(int row, int q) { return xz_[row * stride_ + n_ + q]; }

  int n_;
  int stride_;
  std::vector<uint8_t> xz_;  // 2n rows of [x bits | z bits]
  std::vector<uint8_t> r_;   // sign bit per row
};

}  // namespace ftqc

#include "ftqc/tableau.hpp"

namespace ftqc {

Tableau::Tableau(int n)
    : n_(n), stride_(2 * n), xz_(2 * n * 2 * n, 0), r_(2 * n, 0) {
  for (int i = 0; i < n; ++i) {
    xb(i, i) = 1;           // destabilizer X_i
    zb(n + i, i) = 1;       // stabilizer Z_i
  }
}

void Tableau::h(int q) {
  for (int i = 0; i < 2 * n_; ++i) {
    r_[i] ^= xb(i, q) & zb(i, q);
    std::swap(xb(i, q), zb(i, q));
  }
}

void Tableau::s(int q) {
  for (int i = 0; i < 2 * n_; ++i) {
    r_[i] ^= xb(i, q) & zb(i, q);
    zb(i, q) ^= xb(i, q);
  }
}

void Tableau::cnot(int c, int t) {
  for (int i = 0; i < 2 * n_; ++i) {
    r_[i] ^= xb(i, c) & zb(i, t) & (xb(i, t) ^ zb(i, c) ^ 1);
    xb(i, t) ^= xb(i, c);
    zb(i, c) ^= zb(i, t);
  }
}

void Tableau::x(int q) {
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= zb(i, q);
}

void Tableau::z(int q) {
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= xb(i, q);
}

void Tableau::y(int q) {
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= xb(i, q) ^ zb(i, q);
}

int Tableau::g_accum(int i, int k) {
  // Sum of the standard g(x1,z1,x2,z2) phase exponents over all qubits.
  int sum = 0;
  for (int q = 0; q < n_; ++q) {
    int x1 = xb(i, q), z1 = zb(i, q), x2 = xb(k, q), z2 = zb(k, q);
    if (!x1 && !z1) continue;
    if (x1 && z1)
      sum += z2 - x2;
    else if (x1)
      sum += z2 * (2 * x2 - 1);
    else
      sum += x2 * (1 - 2 * z2);
  }
  return sum;
}

void Tableau::rowsum(int h, int i) {
  int phase = 2 * r_[h] + 2 * r_[i] + g_accum(i, h);
  r_[h] = (uint8_t)(((phase % 4) + 4) % 4 / 2);
  for (int q = 0; q < n_; ++q) {
    xb(h, q) ^= xb(i, q);
    zb(h, q) ^= zb(i, q);
  }
}

int Tableau::measure(int q, CounterRng& rng) {
  int p = -1;
  for (int i = n_; i < 2 * n_; ++i) {
    if (xb(i, q)) {
      p = i;
      break;
    }
  }
  if (p >= 0) {
    // Indeterminate outcome.
    for (int i = 0; i < 2 * n_; ++i)
      if (i != p && xb(i, q)) rowsum(i, p);
    // Destabilizer row p-n becomes the old stabilizer row p.
    for (int q2 = 0; q2 < n_; ++q2) {
      xb(p - n_, q2) = xb(p, q2);
      zb(p - n_, q2) = zb(p, q2);
    }
    r_[p - n_] = r_[p];
    for (int q2 = 0; q2 < n_; ++q2) {
      xb(p, q2) = 0;
      zb(p, q2) = 0;
    }
    zb(p, q) = 1;
    int outcome = (int)(rng.next_u64() & 1);
    r_[p] = (uint8_t)outcome;
    return outcome;
  }
  // Deterministic: accumulate into a scratch row.
  std::vector<uint8_t> sx(n_, 0), sz(n_, 0);
  int sr = 0;
  for (int i = 0; i < n_; ++i) {
    if (!xb(i, q)) continue;
    int phase = 2 * sr + 2 * r_[n_ + i];
    // inline g over scratch and stabilizer row n_+i
    for (int q2 = 0; q2 < n_; ++q2) {
      int x1 = sx[q2], z1 = sz[q2], x2 = xb(n_ + i, q2), z2 = zb(n_ + i, q2);
      if (!x1 && !z1) continue;
      if (x1 && z1)
        phase += z2 - x2;
      else if (x1)
        phase += z2 * (2 * x2 - 1);
      else
        phase += x2 * (1 - 2 * z2);
    }
    sr = ((phase % 4) + 4) % 4 / 2;
    for (int q2 = 0; q2 < n_; ++q2) {
      sx[q2] ^= xb(n_ + i, q2);
      sz[q2] ^= zb(n_ + i, q2);
    }
  }
  return sr;
}

}  // namespace ftqc

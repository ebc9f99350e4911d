#pragma once

namespace ftqc {

// Stochastic Pauli noise applied by the shot runner: a depolarizing error
// after every gate, a classical flip on every measurement record, an X flip
// after every reset, and an optional phase flip per barrier layer.  All rates
// are multiplied by the global scale alpha.  Identity gates, idealized
// preparations (ideal_prep_zero, magic_init) and declared noise markers are
// exempt; markers carry their own probability.
struct NoiseModel {
  double p2 = 0.0;           // two-qubit depolarizing per two-qubit gate
  double p1 = 0.0;           // one-qubit depolarizing per one-qubit gate
  double pm = 0.0;           // measurement record flip
  double pr = 0.0;           // reset/prep flip
  double idle_dephase = 0.0; // per-barrier phase flip on listed qubits
  double alpha = 1.0;

  bool any() const {
    return alpha != 0.0 &&
           (p2 > 0 || p1 > 0 || pm > 0 || pr > 0 || idle_dephase > 0);
  }

  double g1() const { return p1 * alpha; }
  double g2() const { return p2 * alpha; }
  double meas() const { return pm * alpha; }
  double prep() const { return pr * alpha; }
  double idle() const { return idle_dephase * alpha; }
};

}  // namespace ftqc

#pragma once

#include <array>
#include <complex>

#include "ftqc/circuit.hpp"

namespace ftqc {

// Single-qubit stochastic Pauli channel.
struct PauliChannel1 {
  double pi = 1, px = 0, py = 0, pz = 0;
};

// Entanglement fidelity of `ch` applied n_reps times, via the six-state
// protocol: prepare each Pauli eigenstate, apply the channel, measure
// survival; F = (1/4) * sum of the six survival probabilities - 1/2.
double entanglement_fidelity_six_state(const PauliChannel1& ch, int n_reps);

// Same quantity from the Bell-state definition <phi| (I (x) C)(phi) |phi>
// evaluated on 4x4 density matrices; equals the six-state value exactly.
double entanglement_fidelity_bell(const PauliChannel1& ch, int n_reps);

// Exact six-state evaluation for a channel given as a circuit acting on
// qubit 0 (ancillas and measurements allowed; measurement branches are
// averaged).  The circuit must be noiseless.
double channel_entanglement_fidelity(const Circuit& ch, int n_reps,
                                     int max_active = 24);

}  // namespace ftqc

#pragma once

#include <functional>
#include <map>
#include <vector>

#include "ftqc/circuit.hpp"
#include "ftqc/noise.hpp"
#include "ftqc/rng.hpp"

namespace ftqc {

// Statevector over the currently active qubits only.  Qubits activate lazily
// on first use and are dropped from the amplitude vector once a measurement
// or reset makes them a classical product factor, so deep circuits that
// recycle ancillas never pay for their full declared width.
class DenseState {
 public:
  DenseState(int num_qubits, int max_active);

  void apply1(const Mat2& m, int q);
  void apply2(const Mat4& m, int q0, int q1);
  void apply_pauli(int q, int p);  // p in {1,2,3} = X,Y,Z

  double prob_one(int q);

  // Collapses to `outcome` (sampled against `u` when outcome < 0), removes
  // the qubit from the amplitude vector and parks its classical value.
  // Returns the outcome; *prob receives the branch probability.
  int measure(int q, int outcome, double u, double* prob);

  // After a measure() collapse the qubit sits inactive holding its outcome;
  // a reset overwrites that classical value with 0.
  void force_parked_zero(int q);

  int active_count() const { return (int)owner_.size(); }
  double norm() const;

  // Final readout for statevector extraction: amplitudes over the active
  // qubits, qubit ids in bit order (qubit_order[k] owns bit k, LSB first).
  const std::vector<cplx>& amps() const { return amp_; }
  std::vector<int> qubit_order() const { return owner_; }

 private:
  void activate(int q);
  void drop_bit(int b, int keep_value, double inv_norm);

  std::vector<cplx> amp_;
  std::vector<int> pos_;      // qubit -> bit position, -1 if inactive
  std::vector<int> owner_;    // bit position -> qubit
  std::vector<uint8_t> parked_;  // classical value while inactive
  int max_active_;
};

// A single fault injected into an otherwise noiseless execution, used by the
// fault auditor.  `site` is the pre-order instruction id from fault_sites();
// the error fires the first time that instruction executes.
struct FaultSpec {
  int site = -1;
  std::vector<std::pair<int, int>> paulis;  // (qubit, 1..3), applied after
  bool flip_measurement = false;            // for Measure/Reset sites
};

struct DenseLeaf {
  std::vector<cplx> amps;       // state over surviving (active) qubits
  std::vector<int> qubit_order;
  std::vector<uint8_t> bits;
  double weight = 1.0;          // product of branch probabilities
  bool discarded = false;       // an RUS block exhausted its limit
};

// Walks every measurement branch of a noiseless circuit (optionally with one
// injected fault), invoking the callback per leaf.  Branches below
// `prune_below` weight are dropped.
void enumerate_branches(const Circuit& c, const FaultSpec* fault,
                        const std::function<void(DenseLeaf&)>& cb,
                        double prune_below = 1e-12, int max_active = 24);

// Post-selected statevector: every measurement outcome is forced to the
// value `branch` assigns to its destination bit.  Throws if a measured bit
// has no assignment or the branch has (near-)zero amplitude.
DenseLeaf statevector_of(const Circuit& c, const std::map<int, int>& branch,
                         int max_active = 24);

}  // namespace ftqc

#pragma once

#include <string>
#include <vector>

#include "ftqc/dense_sim.hpp"
#include "ftqc/gadgets.hpp"

namespace ftqc {

// Exhaustive single-fault enumeration for a gadget circuit: every non-identity
// Pauli after every gate (15 on a pair, 3 on a single qubit), a record flip on
// every measurement and an X flip after every reset.  Sites with pre-order id
// below `audit_from` (idealized input preparation) are skipped, as are
// assignments, barriers and idealized preparations.
std::vector<FaultSpec> fault_sites(const Circuit& c, int audit_from);

// Human-readable site description ("cnot q3,q8 + X.Z" etc.) for reports.
std::string describe_fault(const Circuit& c, const FaultSpec& f);

struct AuditFailure {
  FaultSpec fault;
  double weight = 0;   // branch weight carrying the failure (1 in frame mode)
  int coset = 0;       // residual logical coset (frame mode)
  double fidelity = 0; // accepted-branch decoded fidelity (dense mode)
  std::string detail;
};

struct AuditReport {
  int sites = 0;      // faulty instruction sites examined
  int faults = 0;     // injected fault cases
  int discarded = 0;  // fault cases whose every branch was rejected
  int clean = 0;      // fault cases accepted with a benign residual
  std::vector<AuditFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Pauli-frame audit for Clifford gadgets whose conditional predicates read
// only bits with deterministic noiseless values (syndromes, flags): under
// that restriction the frame evolution, the acceptance bits and the residual
// coset are independent of the reference randomness, so a single trajectory
// per fault is exhaustive.  Gadgets conditioning on genuinely random bits
// (teleportation corrections) break this -- a fault that stabilizes the
// state at its injection point merely relabels a measurement branch, yet
// still shows up as a frame residual -- and must use audit_dense instead.
// The residual is the frame times the Pauli gates the run applied beyond
// the fault-free run's own; a fault fails if an accepted run leaves the
// output block, after a weight-one syndrome decode, in a logical coset
// outside `allowed_cosets` (0=I, 1=X, 2=Y, 3=Z).
AuditReport audit_frame(const Gadget& g,
                        const std::vector<int>& allowed_cosets = {0},
                        uint64_t seed = 12345);

// Statevector audit for gadgets with non-Clifford content: every measurement
// branch of every fault is enumerated, and each accepted branch is passed
// through the ideal decoder modeled as a channel -- syndrome measurement
// decoheres the 64 sectors (coherent superpositions of correctable Paulis
// are handled term by term, as a later QEC round would), then each sector
// receives its weight-one correction.  A branch fails if the decoded state's
// fidelity against the fault-free output drops below 1 - tol.
AuditReport audit_dense(const Gadget& g, double tol = 1e-7);

}  // namespace ftqc

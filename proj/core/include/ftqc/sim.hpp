#pragma once

#include <memory>
#include <vector>

#include "ftqc/circuit.hpp"
#include "ftqc/dense_sim.hpp"
#include "ftqc/noise.hpp"
#include "ftqc/rng.hpp"
#include "ftqc/tableau.hpp"

namespace ftqc {

struct ShotRecord {
  std::vector<uint8_t> bits;
  bool discarded = false;
  int discard_site = -1;  // pre-order id of the exhausted RUS block
  // (pre-order id, attempts used) per completed RUS execution.
  std::vector<std::pair<int, int>> rus_attempts;
};

enum class BackendKind { Dense, Frame };

struct RunOptions {
  BackendKind backend = BackendKind::Dense;
  NoiseModel noise;
  uint64_t seed = 0;
  int shots = 1;
  int threads = 1;
  int max_active = 24;  // dense active-qubit cap
};

// Abstract per-shot state holder; one instance per trajectory.
class SimBackend {
 public:
  virtual ~SimBackend() = default;
  virtual void gate(const Instruction& in, CounterRng& rng) = 0;
  virtual int measure(int q, CounterRng& rng) = 0;
  virtual void reset(int q, CounterRng& rng) = 0;
  virtual void pauli_error(int q, int p) = 0;  // p in {1,2,3}
  virtual void ideal_prep_zero(const std::vector<int>& qs, CounterRng& rng) = 0;
};

class DenseBackend : public SimBackend {
 public:
  DenseBackend(int num_qubits, int max_active) : st_(num_qubits, max_active) {}
  void gate(const Instruction& in, CounterRng& rng) override;
  int measure(int q, CounterRng& rng) override;
  void reset(int q, CounterRng& rng) override;
  void pauli_error(int q, int p) override { st_.apply_pauli(q, p); }
  void ideal_prep_zero(const std::vector<int>& qs, CounterRng& rng) override;
  DenseState& state() { return st_; }

 private:
  DenseState st_;
};

// Exact stabilizer trajectory: a noiseless reference tableau plus a Pauli
// frame carrying every sampled error.  Clifford-only circuits (T and
// rotations are rejected); measurement records XOR in the frame's X bit.
// Pauli gates land on the tableau, so the frame alone no longer measures
// the distance to a fault-free run once conditional corrections fire;
// `applied_paulis` accumulates every executed X/Y/Z gate (propagated to
// circuit end) so callers can difference two runs.
class FrameBackend : public SimBackend {
 public:
  explicit FrameBackend(int num_qubits)
      : tab_(num_qubits), frame_(num_qubits), applied_(num_qubits) {}
  void gate(const Instruction& in, CounterRng& rng) override;
  int measure(int q, CounterRng& rng) override;
  void reset(int q, CounterRng& rng) override;
  void pauli_error(int q, int p) override;
  void ideal_prep_zero(const std::vector<int>& qs, CounterRng& rng) override;
  const PauliString& frame() const { return frame_; }
  const PauliString& applied_paulis() const { return applied_; }

 private:
  Tableau tab_;
  PauliString frame_;
  PauliString applied_;
};

// Runs one trajectory: full control flow (conditionals, RUS with retry and
// discard), noise sampling, and optional single-fault injection at a
// pre-order instruction site (first execution only).
ShotRecord run_one(const Circuit& c, const NoiseModel& noise,
                   SimBackend& backend, CounterRng& rng,
                   const FaultSpec* fault = nullptr);

// Shot-parallel sampling; shot k uses CounterRng(seed, k), so results are
// identical for any thread count.
std::vector<ShotRecord> run(const Circuit& c, const RunOptions& opt);

}  // namespace ftqc

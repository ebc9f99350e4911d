#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ftqc/gates.hpp"

namespace ftqc {

enum class InstrKind {
  Gate,
  Measure,      // Z-basis measurement of qubits[0] into bits[0]
  Reset,        // qubits[0] back to |0>
  Assign,       // classical bit computation
  Cond,         // run body when every (bit, value) in `when` matches
  Rus,          // repeat body until success predicate holds, up to limit
  Barrier,      // scheduling fence; label may tag it (e.g. "qec")
  NoiseMarker,  // declared stochastic channel, e.g. dephase with prob param
  IdealPrepZero,  // noiseless encoded |0> on the 7 listed qubits
};

enum class AssignOp {
  Copy,     // dest = bits[0]
  Xor,      // dest = parity of all source bits
  Const,    // dest = const_val
  Decode7,  // dest = error-corrected logical value of 7 raw readout bits
  Random,   // dest = fair coin from the shot RNG
};

struct Instruction {
  InstrKind kind = InstrKind::Gate;

  GateKind gate = GateKind::I;
  std::vector<int> qubits;
  double param = 0.0;  // rotation angle, or probability for NoiseMarker

  std::vector<int> bits;  // Measure dest / Assign sources
  AssignOp assign_op = AssignOp::Copy;
  int dest_bit = -1;
  int const_val = 0;

  // Cond predicate or Rus success predicate: bit/value pairs, all must hold.
  std::vector<std::pair<int, int>> when;
  std::vector<Instruction> body;
  int rus_limit = 0;

  std::string label;
};

struct Circuit {
  int num_qubits = 0;
  int num_bits = 0;
  std::vector<Instruction> instrs;
};

// Structural checks.  Empty result means the circuit is well formed:
//  - operand indices in range, multi-qubit operands distinct
//  - every bit read (Assign sources, predicates) was written earlier in
//    program order
//  - probabilities in [0, 1], Rus limit >= 1, Rus success bits written in body
//  - inside a Rus body each qubit's first use is a Reset, IdealPrepZero or
//    MagicInit, so retries start from a known state
std::vector<std::string> validate(const Circuit& c);

struct GateCensus {
  std::map<std::string, long> by_gate;  // gate name -> count
  long one_qubit_gates = 0;
  long two_qubit_gates = 0;
  long measurements = 0;
  long resets = 0;
  long t_like = 0;  // T and Tdg
  int depth = 0;           // all gate layers, greedy schedule
  int two_qubit_depth = 0;  // layers counting only 2-qubit gates
};

// Counts over one linear execution.  Conditional bodies and Rus retries make
// counts path-dependent: `min` skips Cond bodies and counts Rus bodies once,
// `max` includes Cond bodies and multiplies Rus bodies by their limit.
GateCensus gate_census_min(const Circuit& c);
GateCensus gate_census_max(const Circuit& c);

// Pre-order walk assigning each instruction a stable id (a parent precedes
// its body); fault sites and injection points are named by these ids.
void preorder_walk(const Circuit& c,
                   const std::function<void(const Instruction&, int)>& fn);

// Convenience construction helper that tracks allocation.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int num_qubits = 0, int num_bits = 0) {
    c_.num_qubits = num_qubits;
    c_.num_bits = num_bits;
  }

  int qubit() { return c_.num_qubits++; }
  std::vector<int> qubits(int n) {
    std::vector<int> v(n);
    for (auto& q : v) q = qubit();
    return v;
  }
  int bit() { return c_.num_bits++; }
  std::vector<int> bits(int n) {
    std::vector<int> v(n);
    for (auto& b : v) b = bit();
    return v;
  }

  void gate(GateKind g, int q);
  void gate(GateKind g, int q0, int q1);
  void gate(GateKind g, double theta, int q);
  void gate(GateKind g, double theta, int q0, int q1);
  int measure(int q);       // allocates and returns the destination bit
  void measure(int q, int b);
  void reset(int q);
  void ideal_prep_zero(const std::vector<int>& block7);
  void barrier(const std::string& label = "",
               const std::vector<int>& qs = {});
  void dephase(double p, const std::vector<int>& qs);
  void assign_xor(int dest, const std::vector<int>& src);
  void assign_copy(int dest, int src);
  void assign_const(int dest, int v);
  void assign_decode7(int dest, const std::vector<int>& raw);
  void assign_random(int dest);

  // Nested blocks: the function fills the body through this same builder.
  void cond(const std::vector<std::pair<int, int>>& when,
            const std::function<void()>& fill);
  void rus(int limit, const std::function<std::vector<std::pair<int, int>>()>& fill);

  Circuit take() { return std::move(c_); }
  const Circuit& peek() const { return c_; }

 private:
  void push(Instruction in);
  Circuit c_;
  std::vector<std::vector<Instruction>*> stack_;
};

}  // namespace ftqc

#include "ftqc/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace ftqc {

namespace {

void check_instrs(const std::vector<Instruction>& instrs, const Circuit& c,
                  std::vector<uint8_t>& written, bool in_rus,
                  std::vector<uint8_t>* rus_qubit_ready,
                  std::vector<std::string>& out) {
  auto bad = [&](const std::string& msg) { out.push_back(msg); };
  auto check_q = [&](int q, const char* what) {
    if (q < 0 || q >= c.num_qubits)
      bad(std::string(what) + ": qubit " + std::to_string(q) +
          " out of range");
  };
  auto check_b_read = [&](int b, const char* what) {
    if (b < 0 || b >= c.num_bits) {
      bad(std::string(what) + ": bit " + std::to_string(b) + " out of range");
      return;
    }
    if (!written[b])
      bad(std::string(what) + ": bit " + std::to_string(b) +
          " read before any write");
  };
  auto check_b_write = [&](int b, const char* what) {
    if (b < 0 || b >= c.num_bits)
      bad(std::string(what) + ": bit " + std::to_string(b) + " out of range");
    else
      written[b] = 1;
  };
  auto touch_qubit = [&](int q, bool is_init) {
    if (in_rus && rus_qubit_ready && q >= 0 && q < c.num_qubits) {
      if (!is_init && !(*rus_qubit_ready)[q])
        bad("rus body touches qubit " + std::to_string(q) +
            " before resetting it");
      if (is_init) (*rus_qubit_ready)[q] = 1;
    }
  };

  for (const auto& in : instrs) {
    switch (in.kind) {
      case InstrKind::Gate: {
        int want = gate_arity(in.gate);
        if ((int)in.qubits.size() != want)
          bad(std::string("gate ") + gate_name(in.gate) + ": expected " +
              std::to_string(want) + " qubits");
        for (int q : in.qubits) check_q(q, "gate");
        if (in.qubits.size() == 2 && in.qubits[0] == in.qubits[1])
          bad("gate: duplicate qubit operand");
        bool init = in.gate == GateKind::MagicInit;
        for (int q : in.qubits) touch_qubit(q, init);
        break;
      }
      case InstrKind::Measure:
        if (in.qubits.size() != 1 || in.bits.size() != 1) {
          bad("measure: needs one qubit and one bit");
          break;
        }
        check_q(in.qubits[0], "measure");
        touch_qubit(in.qubits[0], false);
        check_b_write(in.bits[0], "measure");
        break;
      case InstrKind::Reset:
        if (in.qubits.size() != 1) {
          bad("reset: needs one qubit");
          break;
        }
        check_q(in.qubits[0], "reset");
        touch_qubit(in.qubits[0], true);
        break;
      case InstrKind::Assign:
        check_b_write(in.dest_bit, "assign");
        if (in.assign_op == AssignOp::Copy && in.bits.size() != 1)
          bad("assign copy: needs one source");
        if (in.assign_op == AssignOp::Decode7 && in.bits.size() != 7)
          bad("assign decode7: needs seven sources");
        if (in.assign_op == AssignOp::Xor && in.bits.empty())
          bad("assign xor: needs sources");
        if (in.assign_op != AssignOp::Const && in.assign_op != AssignOp::Random)
          for (int b : in.bits) check_b_read(b, "assign");
        if (in.assign_op == AssignOp::Const &&
            (in.const_val < 0 || in.const_val > 1))
          bad("assign const: value must be 0 or 1");
        break;
      case InstrKind::Cond:
        if (in.when.empty()) bad("cond: empty predicate");
        for (auto& [b, v] : in.when) {
          check_b_read(b, "cond");
          if (v != 0 && v != 1) bad("cond: predicate value must be 0 or 1");
        }
        check_instrs(in.body, c, written, in_rus, rus_qubit_ready, out);
        break;
      case InstrKind::Rus: {
        if (in.rus_limit < 1) bad("rus: limit must be >= 1");
        if (in.when.empty()) bad("rus: empty success predicate");
        std::vector<uint8_t> ready(c.num_qubits, 0);
        check_instrs(in.body, c, written, true, &ready, out);
        for (auto& [b, v] : in.when) {
          check_b_read(b, "rus success");
          if (v != 0 && v != 1) bad("rus: predicate value must be 0 or 1");
        }
        break;
      }
      case InstrKind::Barrier:
        for (int q : in.qubits) check_q(q, "barrier");
        break;
      case InstrKind::NoiseMarker:
        if (in.param < 0.0 || in.param > 1.0)
          bad("noise marker: probability out of [0,1]");
        if (in.qubits.empty()) bad("noise marker: no qubits");
        for (int q : in.qubits) check_q(q, "noise marker");
        for (int q : in.qubits) touch_qubit(q, false);
        break;
      case InstrKind::IdealPrepZero:
        if (in.qubits.size() != 7) bad("ideal_prep_zero: needs 7 qubits");
        for (int q : in.qubits) check_q(q, "ideal_prep_zero");
        for (int q : in.qubits) touch_qubit(q, true);
        break;
    }
  }
}

struct CensusAcc {
  GateCensus g;
  std::vector<int> qubit_depth, qubit_depth2;

  void add_gate(const Instruction& in) {
    g.by_gate[gate_name(in.gate)]++;
    bool two = in.qubits.size() == 2;
    if (two)
      g.two_qubit_gates++;
    else
      g.one_qubit_gates++;
    if (in.gate == GateKind::T || in.gate == GateKind::Tdg) g.t_like++;
    int d = 0, d2 = 0;
    for (int q : in.qubits) {
      d = std::max(d, qubit_depth[q]);
      d2 = std::max(d2, qubit_depth2[q]);
    }
    d += 1;
    d2 += two ? 1 : 0;
    for (int q : in.qubits) {
      qubit_depth[q] = d;
      qubit_depth2[q] = d2;
    }
    g.depth = std::max(g.depth, d);
    g.two_qubit_depth = std::max(g.two_qubit_depth, d2);
  }
};

void census_walk(const std::vector<Instruction>& instrs, bool maximal,
                 int rus_mult, CensusAcc& acc) {
  for (const auto& in : instrs) {
    switch (in.kind) {
      case InstrKind::Gate:
        for (int k = 0; k < rus_mult; ++k) acc.add_gate(in);
        break;
      case InstrKind::Measure:
        acc.g.measurements += rus_mult;
        break;
      case InstrKind::Reset:
        acc.g.resets += rus_mult;
        break;
      case InstrKind::Cond:
        if (maximal) census_walk(in.body, maximal, rus_mult, acc);
        break;
      case InstrKind::Rus:
        census_walk(in.body, maximal,
                    rus_mult * (maximal ? std::max(1, in.rus_limit) : 1), acc);
        break;
      case InstrKind::IdealPrepZero:
      case InstrKind::Assign:
      case InstrKind::Barrier:
      case InstrKind::NoiseMarker:
        break;
    }
  }
}

GateCensus census(const Circuit& c, bool maximal) {
  CensusAcc acc;
  acc.qubit_depth.assign(c.num_qubits, 0);
  acc.qubit_depth2.assign(c.num_qubits, 0);
  census_walk(c.instrs, maximal, 1, acc);
  return acc.g;
}

}  // namespace

std::vector<std::string> validate(const Circuit& c) {
  std::vector<std::string> out;
  if (c.num_qubits < 0 || c.num_bits < 0) out.push_back("negative sizes");
  std::vector<uint8_t> written(std::max(0, c.num_bits), 0);
  check_instrs(c.instrs, c, written, false, nullptr, out);
  return out;
}

namespace {
void preorder_list(const std::vector<Instruction>& v, int& next,
                   const std::function<void(const Instruction&, int)>& fn) {
  for (const auto& in : v) {
    fn(in, next++);
    if (!in.body.empty()) preorder_list(in.body, next, fn);
  }
}
}  // namespace

void preorder_walk(const Circuit& c,
                   const std::function<void(const Instruction&, int)>& fn) {
  int next = 0;
  preorder_list(c.instrs, next, fn);
}

GateCensus gate_census_min(const Circuit& c) { return census(c, false); }
GateCensus gate_census_max(const Circuit& c) { return census(c, true); }

void CircuitBuilder::push(Instruction in) {
  if (stack_.empty())
    c_.instrs.push_back(std::move(in));
  else
    stack_.back()->push_back(std::move(in));
}

void CircuitBuilder::gate(GateKind g, int q) {
  Instruction in;
  in.kind = InstrKind::Gate;
  in.gate = g;
  in.qubits = {q};
  push(std::move(in));
}

void CircuitBuilder::gate(GateKind g, int q0, int q1) {
  Instruction in;
  in.kind = InstrKind::Gate;
  in.gate = g;
  in.qubits = {q0, q1};
  push(std::move(in));
}

void CircuitBuilder::gate(GateKind g, double theta, int q) {
  Instruction in;
  in.kind = InstrKind::Gate;
  in.gate = g;
  in.param = theta;
  in.qubits = {q};
  push(std::move(in));
}

void CircuitBuilder::gate(GateKind g, double theta, int q0, int q1) {
  Instruction in;
  in.kind = InstrKind::Gate;
  in.gate = g;
  in.param = theta;
  in.qubits = {q0, q1};
  push(std::move(in));
}

int CircuitBuilder::measure(int q) {
  int b = bit();
  measure(q, b);
  return b;
}

void CircuitBuilder::measure(int q, int b) {
  Instruction in;
  in.kind = InstrKind::Measure;
  in.qubits = {q};
  in.bits = {b};
  push(std::move(in));
}

void CircuitBuilder::reset(int q) {
  Instruction in;
  in.kind = InstrKind::Reset;
  in.qubits = {q};
  push(std::move(in));
}

void CircuitBuilder::ideal_prep_zero(const std::vector<int>& block7) {
  Instruction in;
  in.kind = InstrKind::IdealPrepZero;
  in.qubits = block7;
  push(std::move(in));
}

void CircuitBuilder::barrier(const std::string& label,
                             const std::vector<int>& qs) {
  Instruction in;
  in.kind = InstrKind::Barrier;
  in.label = label;
  in.qubits = qs;
  push(std::move(in));
}

void CircuitBuilder::dephase(double p, const std::vector<int>& qs) {
  Instruction in;
  in.kind = InstrKind::NoiseMarker;
  in.label = "dephase";
  in.param = p;
  in.qubits = qs;
  push(std::move(in));
}

void CircuitBuilder::assign_xor(int dest, const std::vector<int>& src) {
  Instruction in;
  in.kind = InstrKind::Assign;
  in.assign_op = AssignOp::Xor;
  in.dest_bit = dest;
  in.bits = src;
  push(std::move(in));
}

void CircuitBuilder::assign_copy(int dest, int src) {
  Instruction in;
  in.kind = InstrKind::Assign;
  in.assign_op = AssignOp::Copy;
  in.dest_bit = dest;
  in.bits = {src};
  push(std::move(in));
}

void CircuitBuilder::assign_const(int dest, int v) {
  Instruction in;
  in.kind = InstrKind::Assign;
  in.assign_op = AssignOp::Const;
  in.dest_bit = dest;
  in.const_val = v;
  push(std::move(in));
}

void CircuitBuilder::assign_decode7(int dest, const std::vector<int>& raw) {
  Instruction in;
  in.kind = InstrKind::Assign;
  in.assign_op = AssignOp::Decode7;
  in.dest_bit = dest;
  in.bits = raw;
  push(std::move(in));
}

void CircuitBuilder::assign_random(int dest) {
  Instruction in;
  in.kind = InstrKind::Assign;
  in.assign_op = AssignOp::Random;
  in.dest_bit = dest;
  push(std::move(in));
}

void CircuitBuilder::cond(const std::vector<std::pair<int, int>>& when,
                          const std::function<void()>& fill) {
  Instruction in;
  in.kind = InstrKind::Cond;
  in.when = when;
  push(std::move(in));
  auto* slot = stack_.empty() ? &c_.instrs.back() : &stack_.back()->back();
  stack_.push_back(&slot->body);
  fill();
  stack_.pop_back();
}

void CircuitBuilder::rus(
    int limit, const std::function<std::vector<std::pair<int, int>>()>& fill) {
  Instruction in;
  in.kind = InstrKind::Rus;
  in.rus_limit = limit;
  push(std::move(in));
  auto* slot = stack_.empty() ? &c_.instrs.back() : &stack_.back()->back();
  stack_.push_back(&slot->body);
  auto success = fill();
  stack_.pop_back();
  slot->when = std::move(success);
}

}  // namespace ftqc

#include <doctest.h>

#include "ftqc/circuit.hpp"
#include "ftqc/rng.hpp"
#include "ftqc/serialize.hpp"

using namespace ftqc;

namespace {

Circuit small_valid() {
  CircuitBuilder b(3, 0);
  b.gate(GateKind::H, 0);
  b.gate(GateKind::CNOT, 0, 1);
  int m = b.measure(1);
  b.cond({{m, 1}}, [&] { b.gate(GateKind::X, 2); });
  return b.take();
}

// Random circuit with nested control flow for round-trip fuzzing.
Circuit random_circuit(CounterRng& rng) {
  int nq = 2 + (int)rng.below(5);
  CircuitBuilder b(nq, 0);
  int written = -1;
  int n = 3 + (int)rng.below(15);
  for (int i = 0; i < n; ++i) {
    switch (rng.below(8)) {
      case 0: b.gate(GateKind::H, (int)rng.below(nq)); break;
      case 1: b.gate(GateKind::T, (int)rng.below(nq)); break;
      case 2: {
        int a = (int)rng.below(nq), c = (int)rng.below(nq);
        if (a != c) b.gate(GateKind::CNOT, a, c);
        break;
      }
      case 3: b.gate(GateKind::RZ, rng.uniform() * 6.28, (int)rng.below(nq)); break;
      case 4: written = b.measure((int)rng.below(nq)); break;
      case 5:
        if (written >= 0)
          b.cond({{written, (int)rng.below(2)}},
                 [&] { b.gate(GateKind::Z, (int)rng.below(nq)); });
        break;
      case 6: {
        int q = (int)rng.below(nq);
        b.rus(1 + (int)rng.below(3), [&]() -> std::vector<std::pair<int, int>> {
          b.reset(q);
          b.gate(GateKind::H, q);
          int f = b.measure(q);
          return {{f, 0}};
        });
        written = -1;  // bits inside rus are fine to reuse, keep it simple
        break;
      }
      case 7: b.barrier("qec", {(int)rng.below(nq)}); break;
    }
  }
  return b.take();
}

}  // namespace

TEST_CASE("validate accepts a well-formed circuit") {
  CHECK(validate(small_valid()).empty());
}

TEST_CASE("validate rejects malformed circuits") {
  Circuit c = small_valid();
  c.instrs[0].qubits[0] = 7;  // out of range
  CHECK(!validate(c).empty());

  CircuitBuilder b(2, 2);
  b.assign_xor(0, {1});  // bit 1 never written
  auto msgs = validate(b.take());
  REQUIRE(!msgs.empty());
  CHECK(msgs[0].find("read before any write") != std::string::npos);

  CircuitBuilder b2(2, 0);
  b2.rus(2, [&]() -> std::vector<std::pair<int, int>> {
    b2.gate(GateKind::H, 0);  // touches qubit 0 without resetting it
    int f = b2.measure(0);
    return {{f, 0}};
  });
  auto msgs2 = validate(b2.take());
  REQUIRE(!msgs2.empty());
  CHECK(msgs2[0].find("before resetting") != std::string::npos);

  CircuitBuilder b3(2, 0);
  b3.gate(GateKind::CNOT, 1, 1);
  CHECK(!validate(b3.take()).empty());
}

TEST_CASE("census counts and depth") {
  CircuitBuilder b(3, 0);
  b.gate(GateKind::H, 0);
  b.gate(GateKind::CNOT, 0, 1);
  b.gate(GateKind::CNOT, 1, 2);
  b.gate(GateKind::T, 2);
  int m = b.measure(2);
  b.cond({{m, 1}}, [&] { b.gate(GateKind::S, 0); });
  auto mn = gate_census_min(b.peek());
  auto mx = gate_census_max(b.peek());
  CHECK(mn.two_qubit_gates == 2);
  CHECK(mn.one_qubit_gates == 2);
  CHECK(mn.t_like == 1);
  CHECK(mn.measurements == 1);
  CHECK(mn.depth == 4);           // H, CX01, CX12, T chain
  CHECK(mn.two_qubit_depth == 2);
  CHECK(mx.one_qubit_gates == 3);  // conditional S included
}

TEST_CASE("rus census multiplies by the limit only in max mode") {
  CircuitBuilder b(1, 0);
  b.rus(3, [&]() -> std::vector<std::pair<int, int>> {
    b.reset(0);
    b.gate(GateKind::H, 0);
    int f = b.measure(0);
    return {{f, 0}};
  });
  CHECK(gate_census_min(b.peek()).one_qubit_gates == 1);
  CHECK(gate_census_max(b.peek()).one_qubit_gates == 3);
}

TEST_CASE("text and json round trips on 1000 random circuits") {
  CounterRng rng(2024, 0);
  for (int i = 0; i < 1000; ++i) {
    Circuit c = random_circuit(rng);
    std::string text = circuit_to_text(c);
    Circuit c2 = circuit_from_text(text);
    CHECK(circuit_to_text(c2) == text);
    std::string js = circuit_to_json(c);
    Circuit c3 = circuit_from_json(js);
    CHECK(circuit_to_json(c3) == js);
    // Cross-format: both parses describe the same circuit.
    CHECK(circuit_to_text(c3) == text);
  }
}

TEST_CASE("hex float angles survive exactly") {
  CircuitBuilder b(1, 0);
  b.gate(GateKind::RZ, 0x1.921fb54442d18p+1, 0);
  Circuit c = circuit_from_text(circuit_to_text(b.peek()));
  CHECK(c.instrs[0].param == 0x1.921fb54442d18p+1);
}

TEST_CASE("preorder ids are stable and parent-first") {
  Circuit c = small_valid();
  std::vector<int> kinds;
  preorder_walk(c, [&](const Instruction& in, int id) {
    CHECK(id == (int)kinds.size());
    kinds.push_back((int)in.kind);
  });
  CHECK(kinds.size() == 5);  // H, CNOT, measure, cond, X-in-body
}

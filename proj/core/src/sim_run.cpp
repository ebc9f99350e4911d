#include "ftqc/sim.hpp"

#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "ftqc/steane.hpp"

namespace ftqc {

void DenseBackend::gate(const Instruction& in, CounterRng& rng) {
  if (in.gate == GateKind::MagicInit) {
    reset(in.qubits[0], rng);
    st_.apply1(gate_matrix1(GateKind::MagicInit), in.qubits[0]);
    return;
  }
  if (in.qubits.size() == 1)
    st_.apply1(gate_matrix1(in.gate, in.param), in.qubits[0]);
  else
    st_.apply2(gate_matrix2(in.gate, in.param), in.qubits[0], in.qubits[1]);
}

int DenseBackend::measure(int q, CounterRng& rng) {
  double p = 0;
  return st_.measure(q, -1, rng.uniform(), &p);
}

void DenseBackend::reset(int q, CounterRng& rng) {
  double p = 0;
  st_.measure(q, -1, rng.uniform(), &p);
  st_.force_parked_zero(q);
}

void DenseBackend::ideal_prep_zero(const std::vector<int>& qs,
                                   CounterRng& rng) {
  for (int q : qs) reset(q, rng);
  for (const auto& s : encoder_steps()) {
    if (s.is_h)
      st_.apply1(gate_matrix1(GateKind::H), qs[s.a]);
    else
      st_.apply2(gate_matrix2(GateKind::CNOT), qs[s.a], qs[s.b]);
  }
}

void FrameBackend::gate(const Instruction& in, CounterRng&) {
  if (!gate_is_clifford(in.gate))
    throw std::runtime_error(std::string("pauli-frame backend: gate '") +
                             gate_name(in.gate) +
                             "' is not Clifford; use the dense backend or a "
                             "magic-injection marker");
  int q0 = in.qubits[0];
  switch (in.gate) {
    case GateKind::I: break;
    case GateKind::X: tab_.x(q0); applied_.x[q0] ^= 1; break;
    case GateKind::Y: tab_.y(q0); applied_.x[q0] ^= 1; applied_.z[q0] ^= 1; break;
    case GateKind::Z: tab_.z(q0); applied_.z[q0] ^= 1; break;
    case GateKind::H: tab_.h(q0); break;
    case GateKind::S: tab_.s(q0); break;
    case GateKind::Sdg: tab_.sdg(q0); break;
    case GateKind::SX: tab_.sx(q0); break;
    case GateKind::SXdg: tab_.sxdg(q0); break;
    case GateKind::CNOT: tab_.cnot(q0, in.qubits[1]); break;
    case GateKind::CZ: tab_.cz(q0, in.qubits[1]); break;
    case GateKind::SWAP: tab_.swap(q0, in.qubits[1]); break;
    default:
      throw std::runtime_error("pauli-frame backend: unsupported gate");
  }
  pauli_conjugate(in.gate, in.qubits.data(), &frame_);
  pauli_conjugate(in.gate, in.qubits.data(), &applied_);
}

int FrameBackend::measure(int q, CounterRng& rng) {
  int ref = tab_.measure(q, rng);
  return ref ^ frame_.x[q];
}

void FrameBackend::reset(int q, CounterRng& rng) {
  tab_.reset(q, rng);
  frame_.x[q] = 0;
  frame_.z[q] = 0;
  applied_.x[q] = 0;
  applied_.z[q] = 0;
}

void FrameBackend::pauli_error(int q, int p) {
  frame_.x[q] ^= (p == 1 || p == 2);
  frame_.z[q] ^= (p == 2 || p == 3);
}

void FrameBackend::ideal_prep_zero(const std::vector<int>& qs,
                                   CounterRng& rng) {
  for (int q : qs) {
    tab_.reset(q, rng);
    frame_.x[q] = 0;
    frame_.z[q] = 0;
    applied_.x[q] = 0;
    applied_.z[q] = 0;
  }
  for (const auto& s : encoder_steps()) {
    if (s.is_h)
      tab_.h(qs[s.a]);
    else
      tab_.cnot(qs[s.a], qs[s.b]);
  }
}

namespace {

struct ExecFrame {
  const std::vector<Instruction>* list;
  size_t idx = 0;
  const Instruction* rus = nullptr;
  int rus_uid = -1;
  int attempt = 1;
};

bool when_holds(const std::vector<std::pair<int, int>>& when,
                const std::vector<uint8_t>& bits) {
  for (auto& [b, v] : when)
    if (bits[b] != v) return false;
  return true;
}

void depolarize1(SimBackend& b, CounterRng& rng, double p, int q) {
  if (p > 0 && rng.bernoulli(p)) b.pauli_error(q, 1 + (int)rng.below(3));
}

void depolarize2(SimBackend& b, CounterRng& rng, double p, int q0, int q1) {
  if (p > 0 && rng.bernoulli(p)) {
    int pp = 1 + (int)rng.below(15);  // 1..15 = nontrivial pairs (pa*4+pb)
    int pa = pp >> 2, pb = pp & 3;
    if (pa) b.pauli_error(q0, pa);
    if (pb) b.pauli_error(q1, pb);
  }
}

}  // namespace

ShotRecord run_one(const Circuit& c, const NoiseModel& noise,
                   SimBackend& backend, CounterRng& rng,
                   const FaultSpec* fault) {
  std::unordered_map<const Instruction*, int> uid;
  if (fault || true) {
    // uid map also powers rus_attempts bookkeeping
    preorder_walk(c, [&](const Instruction& in, int id) { uid[&in] = id; });
  }
  ShotRecord rec;
  rec.bits.assign(c.num_bits, 0);
  bool fault_fired = false;
  auto is_site = [&](const Instruction& in) {
    return fault && !fault_fired && uid.at(&in) == fault->site;
  };

  std::vector<ExecFrame> stack;
  stack.push_back({&c.instrs});
  while (!stack.empty()) {
    ExecFrame& fr = stack.back();
    if (fr.idx >= fr.list->size()) {
      if (fr.rus) {
        const Instruction& r = *fr.rus;
        if (when_holds(r.when, rec.bits)) {
          rec.rus_attempts.emplace_back(fr.rus_uid, fr.attempt);
          stack.pop_back();
        } else if (fr.attempt < r.rus_limit) {
          fr.attempt++;
          fr.idx = 0;
        } else {
          rec.rus_attempts.emplace_back(fr.rus_uid, fr.attempt);
          rec.discarded = true;
          rec.discard_site = fr.rus_uid;
          return rec;
        }
      } else {
        stack.pop_back();
      }
      continue;
    }
    const Instruction& in = (*fr.list)[fr.idx++];
    switch (in.kind) {
      case InstrKind::Gate: {
        backend.gate(in, rng);
        if (in.gate != GateKind::MagicInit && in.gate != GateKind::I) {
          if (in.qubits.size() == 1)
            depolarize1(backend, rng, noise.g1(), in.qubits[0]);
          else
            depolarize2(backend, rng, noise.g2(), in.qubits[0], in.qubits[1]);
        }
        if (is_site(in)) {
          fault_fired = true;
          for (auto& [q, p] : fault->paulis) backend.pauli_error(q, p);
        }
        break;
      }
      case InstrKind::Measure: {
        int m = backend.measure(in.qubits[0], rng);
        if (noise.meas() > 0 && rng.bernoulli(noise.meas())) m ^= 1;
        if (is_site(in) && fault->flip_measurement) {
          fault_fired = true;
          m ^= 1;
        }
        rec.bits[in.bits[0]] = (uint8_t)m;
        break;
      }
      case InstrKind::Reset:
        backend.reset(in.qubits[0], rng);
        if (noise.prep() > 0 && rng.bernoulli(noise.prep()))
          backend.pauli_error(in.qubits[0], 1);
        if (is_site(in)) {
          fault_fired = true;
          if (fault->flip_measurement) backend.pauli_error(in.qubits[0], 1);
          for (auto& [q, p] : fault->paulis) backend.pauli_error(q, p);
        }
        break;
      case InstrKind::Assign:
        switch (in.assign_op) {
          case AssignOp::Copy:
            rec.bits[in.dest_bit] = rec.bits[in.bits[0]];
            break;
          case AssignOp::Xor: {
            uint8_t v = 0;
            for (int b : in.bits) v ^= rec.bits[b];
            rec.bits[in.dest_bit] = v;
            break;
          }
          case AssignOp::Const:
            rec.bits[in.dest_bit] = (uint8_t)in.const_val;
            break;
          case AssignOp::Decode7: {
            std::array<uint8_t, 7> raw{};
            for (int k = 0; k < 7; ++k) raw[k] = rec.bits[in.bits[k]];
            rec.bits[in.dest_bit] = (uint8_t)decode_measurement(raw).logical;
            break;
          }
          case AssignOp::Random:
            rec.bits[in.dest_bit] = (uint8_t)(rng.next_u64() & 1);
            break;
        }
        break;
      case InstrKind::Cond:
        if (when_holds(in.when, rec.bits) && !in.body.empty())
          stack.push_back({&in.body});
        break;
      case InstrKind::Rus:
        if (!in.body.empty())
          stack.push_back({&in.body, 0, &in, uid.at(&in), 1});
        break;
      case InstrKind::Barrier:
        if (noise.idle() > 0)
          for (int q : in.qubits)
            if (rng.bernoulli(noise.idle())) backend.pauli_error(q, 3);
        break;
      case InstrKind::NoiseMarker:
        // "dephase": one coin; on success Z lands on every listed qubit
        // (a joint logical-Z event, not independent per-qubit flips).
        if (in.label == "dephase") {
          if (rng.bernoulli(in.param))
            for (int q : in.qubits) backend.pauli_error(q, 3);
        } else {
          throw std::runtime_error("unknown noise marker: " + in.label);
        }
        break;
      case InstrKind::IdealPrepZero:
        backend.ideal_prep_zero(in.qubits, rng);
        break;
    }
  }
  return rec;
}

std::vector<ShotRecord> run(const Circuit& c, const RunOptions& opt) {
  if (opt.shots < 0) throw std::invalid_argument("run: negative shots");
  std::vector<ShotRecord> out((size_t)opt.shots);
  int threads = std::max(1, opt.threads);
  auto work = [&](int t) {
    for (int k = t; k < opt.shots; k += threads) {
      CounterRng rng(opt.seed, (uint64_t)k);
      if (opt.backend == BackendKind::Dense) {
        DenseBackend b(c.num_qubits, opt.max_active);
        out[k] = run_one(c, opt.noise, b, rng);
      } else {
        FrameBackend b(c.num_qubits);
        out[k] = run_one(c, opt.noise, b, rng);
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace ftqc

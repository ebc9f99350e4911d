#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftqc/gadgets.hpp"
#include "ftqc/lower.hpp"

namespace ftqc {
namespace {

struct LowerCtx {
  const LoweringConfig* cfg;
  CircuitBuilder* b;
  std::vector<Block> blocks;  // blocks[i] currently carries logical qubit i
  Block anc_block;            // current magic/QEC ancilla block
  std::vector<int> shared;
  long t_count = 0;
  double synth_fid = 1.0;
};

void prep_t_on_anc(LowerCtx& cx) {
  std::vector<int> ancs(cx.shared.begin(), cx.shared.end());
  emit_prep_h(*cx.b, cx.cfg->prep_h_variant, cx.anc_block, ancs,
              cx.cfg->rus_limit);
  emit_h_to_t(*cx.b, cx.anc_block);
}

void lower_t(LowerCtx& cx, int q) {
  prep_t_on_anc(cx);
  ++cx.t_count;
  if (cx.cfg->t_variant == "t-swap") {
    emit_t_swap(*cx.b, cx.blocks[q], cx.anc_block);
    std::swap(cx.blocks[q], cx.anc_block);  // logical moved to the ancilla
  } else if (cx.cfg->t_variant == "t-bare") {
    emit_t_bare(*cx.b, cx.blocks[q], cx.anc_block);
  } else {
    throw std::invalid_argument("unknown t_variant " + cx.cfg->t_variant);
  }
}

void lower_qec(LowerCtx& cx, const std::vector<int>& logical_qubits) {
  std::vector<int> qs = logical_qubits;
  if (qs.empty())
    for (size_t i = 0; i < cx.blocks.size(); ++i) qs.push_back((int)i);
  for (int q : qs) {
    const std::string& v = cx.cfg->qec_variant;
    if (v == "steane-bare") {
      emit_qec_steane_bare(*cx.b, cx.blocks[q], cx.anc_block, cx.shared[0],
                           cx.shared[1], cx.cfg->rus_limit);
    } else if (v == "steane-swap") {
      emit_qec_steane_swap(*cx.b, cx.blocks[q], cx.anc_block, cx.shared[0],
                           cx.shared[1], cx.cfg->rus_limit);
    } else if (v == "flag-ft") {
      emit_qec_flag_ft(*cx.b, cx.blocks[q], cx.shared[0], cx.shared[1],
                       cx.shared[2]);
    } else if (v == "none") {
    } else {
      // knill needs a second ancilla block: single-ancilla-block contention.
      throw std::invalid_argument("qec_variant not lowerable: " + v);
    }
  }
}

void lower_gate(LowerCtx& cx, const Instruction& in);

void lower_sequence(LowerCtx& cx, const std::vector<Instruction>& repl,
                    const std::vector<int>& operand_map) {
  for (const auto& r : repl) {
    Instruction mapped = r;
    for (auto& q : mapped.qubits) q = operand_map[q];
    lower_gate(cx, mapped);
  }
}

void lower_gate(LowerCtx& cx, const Instruction& in) {
  CircuitBuilder& b = *cx.b;
  GateKind g = in.gate;
  switch (g) {
    case GateKind::I:
      return;
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::S:
    case GateKind::Sdg:
      emit_logical_1q(b, g, cx.blocks[in.qubits[0]]);
      return;
    case GateKind::SX:  // SX = H S H
    case GateKind::SXdg: {
      const Block& q = cx.blocks[in.qubits[0]];
      emit_logical_1q(b, GateKind::H, q);
      emit_logical_1q(b, g == GateKind::SX ? GateKind::S : GateKind::Sdg, q);
      emit_logical_1q(b, GateKind::H, q);
      return;
    }
    case GateKind::T:
      lower_t(cx, in.qubits[0]);
      return;
    case GateKind::Tdg:  // Tdg = Sdg T
      lower_t(cx, in.qubits[0]);
      emit_logical_1q(b, GateKind::Sdg, cx.blocks[in.qubits[0]]);
      return;
    case GateKind::CNOT:
      emit_logical_cnot(b, cx.blocks[in.qubits[0]], cx.blocks[in.qubits[1]]);
      return;
    case GateKind::CZ:
      emit_logical_cz(b, cx.blocks[in.qubits[0]], cx.blocks[in.qubits[1]]);
      return;
    case GateKind::SWAP:
      std::swap(cx.blocks[in.qubits[0]], cx.blocks[in.qubits[1]]);
      return;
    case GateKind::MagicInit: {
      std::vector<int> ancs(cx.shared.begin(), cx.shared.end());
      emit_prep_h(b, cx.cfg->prep_h_variant, cx.blocks[in.qubits[0]], ancs,
                  cx.cfg->rus_limit);
      emit_h_to_t(b, cx.blocks[in.qubits[0]]);
      return;
    }
    case GateKind::RX: {  // RX = H RZ H
      const Block& q = cx.blocks[in.qubits[0]];
      emit_logical_1q(b, GateKind::H, q);
      Instruction rz = in;
      rz.gate = GateKind::RZ;
      lower_gate(cx, rz);
      emit_logical_1q(b, GateKind::H, q);
      return;
    }
    case GateKind::RY: {  // RY = (S H) RZ (S H)^dag
      const Block& q = cx.blocks[in.qubits[0]];
      emit_logical_1q(b, GateKind::Sdg, q);
      emit_logical_1q(b, GateKind::H, q);
      Instruction rz = in;
      rz.gate = GateKind::RZ;
      lower_gate(cx, rz);
      emit_logical_1q(b, GateKind::H, q);
      emit_logical_1q(b, GateKind::S, q);
      return;
    }
    case GateKind::RZ:
    case GateKind::CS:
    case GateKind::CRY:
    case GateKind::RZZ: {
      DecompositionEntry e = decompose_rotation(g, in.param, cx.cfg->t_budget);
      cx.synth_fid *= e.fidelity;
      lower_sequence(cx, e.replacement, in.qubits);
      return;
    }
    default:
      throw std::invalid_argument(std::string("un-lowerable gate ") +
                                  gate_name(g));
  }
}

void lower_instrs(LowerCtx& cx, const std::vector<Instruction>& instrs) {
  CircuitBuilder& b = *cx.b;
  for (const auto& in : instrs) {
    switch (in.kind) {
      case InstrKind::Gate:
        lower_gate(cx, in);
        break;
      case InstrKind::Measure: {
        std::array<int, 7> raw;
        int tmp = emit_logical_measure_z(b, cx.blocks[in.qubits[0]], &raw);
        b.assign_copy(in.bits[0], tmp);
        break;
      }
      case InstrKind::Reset:
        emit_prep_zero_ft(b, cx.blocks[in.qubits[0]], cx.shared[0],
                          cx.shared[1], cx.cfg->rus_limit);
        break;
      case InstrKind::Assign:
        switch (in.assign_op) {
          case AssignOp::Copy: b.assign_copy(in.dest_bit, in.bits[0]); break;
          case AssignOp::Xor: b.assign_xor(in.dest_bit, in.bits); break;
          case AssignOp::Const: b.assign_const(in.dest_bit, in.const_val); break;
          case AssignOp::Random: b.assign_random(in.dest_bit); break;
          default:
            throw std::invalid_argument("un-lowerable assign op");
        }
        break;
      case InstrKind::Barrier:
        if (in.label == "qec") {
          lower_qec(cx, in.qubits);
        } else {
          b.barrier(in.label);
        }
        break;
      case InstrKind::Cond: {
        b.cond(in.when, [&] { lower_instrs(cx, in.body); });
        break;
      }
      case InstrKind::NoiseMarker: {
        Instruction m = in;
        m.qubits.clear();
        for (int lq : in.qubits)
          for (int pq : cx.blocks[lq]) m.qubits.push_back(pq);
        b.dephase(m.param, m.qubits);
        break;
      }
      default:
        throw std::invalid_argument("un-lowerable instruction kind");
    }
  }
}

}  // namespace

Circuit lower(const Circuit& logical, const LoweringConfig& cfg,
              LoweringReport* report) {
  Circuit src = logical;
  if (cfg.run_simplify) src = simplify(src);
  if (cfg.head_start) src = t_state_head_start(src);

  int n = src.num_qubits;
  int k = cfg.shared_ancillas;
  if (k < 2) throw std::invalid_argument("need at least 2 shared ancillas");

  CircuitBuilder b(0, src.num_bits);
  LowerCtx cx;
  cx.cfg = &cfg;
  cx.b = &b;
  for (int i = 0; i < n; ++i) {
    Block blk;
    for (auto& q : blk) q = b.qubit();
    cx.blocks.push_back(blk);
  }
  for (auto& q : cx.anc_block) q = b.qubit();
  cx.shared = b.qubits(k);

  // Every logical qubit starts in encoded |0> through flagged RUS prep.
  for (int i = 0; i < n; ++i)
    emit_prep_zero_ft(b, cx.blocks[i], cx.shared[0], cx.shared[1],
                      cfg.rus_limit);

  lower_instrs(cx, src.instrs);

  Circuit phys = b.take();
  if (report) {
    report->logical_qubits = n;
    report->physical_qubits = phys.num_qubits;
    report->data_blocks = cx.blocks;
    report->ancilla_block = cx.anc_block;
    report->shared_ancillas = cx.shared;
    report->census_min = gate_census_min(phys);
    report->census_max = gate_census_max(phys);
    report->t_count = cx.t_count;
    report->synthesis_fidelity = cx.synth_fid;
    int rus = 0;
    preorder_walk(phys, [&](const Instruction& in, int) {
      if (in.kind == InstrKind::Rus) ++rus;
    });
    report->rus_blocks = rus;
  }
  return phys;
}

std::vector<int> default_qec_positions(const Circuit& logical, int cycles) {
  int total = 0;
  for (const auto& in : logical.instrs)
    if (in.kind == InstrKind::Gate && gate_arity(in.gate) == 2) ++total;
  std::vector<int> out;
  if (cycles <= 0 || total == 0) return out;
  int seen = 0, next = 1;
  for (size_t i = 0; i < logical.instrs.size() && (int)out.size() < cycles;
       ++i) {
    const auto& in = logical.instrs[i];
    if (in.kind == InstrKind::Gate && gate_arity(in.gate) == 2) ++seen;
    // Place a marker once the running count passes the next even split.
    if (seen * (cycles + 1) >= next * total) {
      out.push_back((int)i + 1);
      ++next;
    }
  }
  return out;
}

}  // namespace ftqc

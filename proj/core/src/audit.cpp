#include "ftqc/audit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "ftqc/gates.hpp"
#include "ftqc/noise.hpp"
#include "ftqc/rng.hpp"
#include "ftqc/sim.hpp"
#include "ftqc/steane.hpp"

namespace ftqc {

namespace {

const char kPauliNames[] = "IXYZ";

bool skip_gate(GateKind g) {
  // Identity and idealized preparations are noise-exempt by convention.
  return g == GateKind::I || g == GateKind::MagicInit;
}

}  // namespace

std::vector<FaultSpec> fault_sites(const Circuit& c, int audit_from) {
  std::vector<FaultSpec> out;
  preorder_walk(c, [&](const Instruction& in, int id) {
    if (id < audit_from) return;
    switch (in.kind) {
      case InstrKind::Gate: {
        if (skip_gate(in.gate)) return;
        if (in.qubits.size() == 1) {
          for (int p = 1; p <= 3; ++p)
            out.push_back({id, {{in.qubits[0], p}}, false});
        } else {
          for (int p0 = 0; p0 <= 3; ++p0)
            for (int p1 = 0; p1 <= 3; ++p1) {
              if (p0 == 0 && p1 == 0) continue;
              FaultSpec f{id, {}, false};
              if (p0) f.paulis.emplace_back(in.qubits[0], p0);
              if (p1) f.paulis.emplace_back(in.qubits[1], p1);
              out.push_back(std::move(f));
            }
        }
        break;
      }
      case InstrKind::Measure:
      case InstrKind::Reset:
        out.push_back({id, {}, true});
        break;
      default:
        break;
    }
  });
  return out;
}

std::string describe_fault(const Circuit& c, const FaultSpec& f) {
  std::ostringstream os;
  preorder_walk(c, [&](const Instruction& in, int id) {
    if (id != f.site) return;
    os << "site " << id << " ";
    switch (in.kind) {
      case InstrKind::Gate:
        os << gate_name(in.gate);
        for (int q : in.qubits) os << " q" << q;
        break;
      case InstrKind::Measure:
        os << "measure q" << in.qubits[0];
        break;
      case InstrKind::Reset:
        os << "reset q" << in.qubits[0];
        break;
      default:
        os << "instr";
        break;
    }
  });
  if (f.flip_measurement) os << " flip";
  for (auto& [q, p] : f.paulis) os << " " << kPauliNames[p] << q;
  return os.str();
}

namespace {

int count_sites(const std::vector<FaultSpec>& faults) {
  int sites = 0, last = -1;
  for (const auto& f : faults)
    if (f.site != last) {
      ++sites;
      last = f.site;
    }
  return sites;
}

bool accepted_bits(const std::vector<std::pair<int, int>>& when,
                   const std::vector<uint8_t>& bits) {
  for (auto [b, v] : when)
    if (bits[b] != v) return false;
  return true;
}

// Restriction of a frame to the output block, as a 7-qubit string.
PauliString restrict_to_block(const PauliString& p, const Block& blk) {
  PauliString r(7);
  for (int j = 0; j < 7; ++j) r.set_pauli(j, p.pauli_at(blk[j]));
  return r;
}

// Weight-one decode: correct what the two syndromes point at, then classify.
int decoded_coset(const PauliString& r) {
  static const std::array<int, 7> kIdent = {0, 1, 2, 3, 4, 5, 6};
  BlockSyndromes bs = block_syndromes(r, kIdent);
  PauliString corr(7);
  if (bs.x_syndrome) corr.x[bs.x_syndrome - 1] = 1;
  if (bs.z_syndrome) corr.z[bs.z_syndrome - 1] = 1;
  return logical_coset(pauli_mul(r, corr));
}

// ---- dense-mode decoding over a block-ordered 128-amplitude vector ----

using vec128 = std::vector<cplx>;

int word_syndrome(int w) {
  int s = 0;
  for (int r = 0; r < 3; ++r) {
    int par = 0;
    for (int j = 0; j < 7; ++j) par ^= ((w >> j) & 1) & kCheckMatrix[r][j];
    s |= par << (2 - r);
  }
  return s;
}

// Coherent sum of (correction * sector projector) over the 8 bit-flip
// sectors: each basis word moves to the codeword its syndrome points at.
vec128 correct_bitflips(const vec128& v) {
  vec128 out(128, 0);
  for (int w = 0; w < 128; ++w) {
    int s = word_syndrome(w);
    out[s ? w ^ (1 << (s - 1)) : w] += v[w];
  }
  return out;
}

void hadamard_all(vec128& v) {
  const double s = 1 / std::sqrt(2.0);
  for (int j = 0; j < 7; ++j)
    for (int w = 0; w < 128; ++w)
      if (!((w >> j) & 1)) {
        cplx a = v[w], b = v[w | (1 << j)];
        v[w] = s * (a + b);
        v[w | (1 << j)] = s * (a - b);
      }
}

// Ideal decoder: bit-flip correction in the Z basis, then (the code being
// dual to itself) the same correction in the X basis handles phase flips.
// Only valid on states confined to one syndrome sector (e.g. the fault-free
// reference); cross-sector superpositions must go through the channel below.
vec128 decode_closure(const vec128& v) {
  vec128 out = correct_bitflips(v);
  hadamard_all(out);
  out = correct_bitflips(out);
  hadamard_all(out);
  return out;
}

// Fidelity of the decoded state against a normalized pure target, with the
// decoder modeled as a channel: syndrome measurement decoheres the 64
// sectors (non-Clifford gadgets leave coherent superpositions of Pauli
// errors, whose terms a decoder handles independently), then each sector is
// Pauli-corrected and its overlap accumulated.
double decoded_fidelity(const vec128& v, const vec128& target) {
  double num = 0, den = 0;
  for (int w = 0; w < 128; ++w) den += std::norm(v[w]);
  for (int sx = 0; sx < 8; ++sx) {
    // Bit-flip sector projection and correction in the Z basis.
    vec128 u(128, 0);
    for (int w = 0; w < 128; ++w)
      if (word_syndrome(w) == sx) u[sx ? w ^ (1 << (sx - 1)) : w] = v[w];
    // Phase-flip sectors are bit-flip sectors of the conjugate basis.
    hadamard_all(u);
    for (int sz = 0; sz < 8; ++sz) {
      vec128 t(128, 0);
      for (int w = 0; w < 128; ++w)
        if (word_syndrome(w) == sz) t[sz ? w ^ (1 << (sz - 1)) : w] = u[w];
      hadamard_all(t);
      cplx ip = 0;
      for (int w = 0; w < 128; ++w) ip += std::conj(target[w]) * t[w];
      num += std::norm(ip);
    }
  }
  return num / den;
}

vec128 block_amplitudes(const DenseLeaf& leaf, const Block& blk) {
  if (leaf.qubit_order.size() != 7)
    throw std::runtime_error("audit_dense: output block is not isolated");
  std::array<int, 7> pos{};
  for (int j = 0; j < 7; ++j) {
    auto it = std::find(leaf.qubit_order.begin(), leaf.qubit_order.end(),
                        blk[j]);
    if (it == leaf.qubit_order.end())
      throw std::runtime_error("audit_dense: output qubit was consumed");
    pos[j] = (int)(it - leaf.qubit_order.begin());
  }
  vec128 out(128, 0);
  for (int i = 0; i < 128; ++i) {
    int k = 0;
    for (int j = 0; j < 7; ++j)
      if ((i >> j) & 1) k |= 1 << pos[j];
    out[i] = leaf.amps[k];
  }
  return out;
}

}  // namespace

AuditReport audit_frame(const Gadget& g, const std::vector<int>& allowed,
                        uint64_t seed) {
  const Circuit& c = g.circuit;
  auto faults = fault_sites(c, g.audit_from);
  AuditReport rep;
  rep.sites = count_sites(faults);
  NoiseModel quiet;
  // Conditional Pauli corrections land on the reference tableau, so the
  // residual error of a run is its frame times whatever Paulis it applied
  // beyond the fault-free run's own applications.
  PauliString ref_applied(7);
  {
    CounterRng rng(seed, faults.size());
    FrameBackend be(c.num_qubits);
    ShotRecord rec = run_one(c, quiet, be, rng, nullptr);
    if (rec.discarded || !accepted_bits(g.success_when, rec.bits))
      throw std::runtime_error("audit_frame: fault-free run not accepted");
    ref_applied = restrict_to_block(be.applied_paulis(), g.output_block);
  }
  uint64_t stream = 0;
  for (const auto& f : faults) {
    ++rep.faults;
    CounterRng rng(seed, stream++);
    FrameBackend be(c.num_qubits);
    ShotRecord rec = run_one(c, quiet, be, rng, &f);
    if (rec.discarded || !accepted_bits(g.success_when, rec.bits)) {
      ++rep.discarded;
      continue;
    }
    PauliString residual = pauli_mul(
        pauli_mul(restrict_to_block(be.frame(), g.output_block),
                  restrict_to_block(be.applied_paulis(), g.output_block)),
        ref_applied);
    int coset = decoded_coset(residual);
    if (std::find(allowed.begin(), allowed.end(), coset) != allowed.end()) {
      ++rep.clean;
    } else {
      AuditFailure fail;
      fail.fault = f;
      fail.weight = 1.0;
      fail.coset = coset;
      fail.detail = describe_fault(c, f) + " -> coset " + std::to_string(coset);
      rep.failures.push_back(std::move(fail));
    }
  }
  return rep;
}

AuditReport audit_dense(const Gadget& g, double tol) {
  const Circuit& c = g.circuit;
  auto faults = fault_sites(c, g.audit_from);
  AuditReport rep;
  rep.sites = count_sites(faults);

  // Fault-free reference output, after the ideal decoder, normalized.
  vec128 target;
  enumerate_branches(c, nullptr, [&](DenseLeaf& leaf) {
    if (leaf.discarded || !accepted_bits(g.success_when, leaf.bits)) return;
    if (target.empty())
      target = decode_closure(block_amplitudes(leaf, g.output_block));
  });
  if (target.empty())
    throw std::runtime_error("audit_dense: no accepted fault-free branch");
  double tn = 0;
  for (const auto& a : target) tn += std::norm(a);
  for (auto& a : target) a /= std::sqrt(tn);

  for (const auto& f : faults) {
    ++rep.faults;
    double worst = 1.0, fail_weight = 0.0, accepted_weight = 0.0;
    enumerate_branches(c, &f, [&](DenseLeaf& leaf) {
      if (leaf.discarded || !accepted_bits(g.success_when, leaf.bits)) return;
      accepted_weight += leaf.weight;
      double fid =
          decoded_fidelity(block_amplitudes(leaf, g.output_block), target);
      if (1.0 - fid > tol) {
        worst = std::min(worst, fid);
        fail_weight += leaf.weight;
      }
    });
    if (accepted_weight <= 0) {
      ++rep.discarded;
    } else if (fail_weight == 0) {
      ++rep.clean;
    } else {
      AuditFailure fail;
      fail.fault = f;
      fail.weight = fail_weight;
      fail.fidelity = worst;
      fail.detail = describe_fault(c, f) + " -> fidelity " +
                    std::to_string(worst);
      rep.failures.push_back(std::move(fail));
    }
  }
  return rep;
}

}  // namespace ftqc

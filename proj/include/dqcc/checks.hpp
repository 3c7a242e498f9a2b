#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/circuit_io.hpp"
#include "dqcc/distributed.hpp"
#include "dqcc/network.hpp"
#include "dqcc/router.hpp"
#include "dqcc/scheduler.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace dqcc {

/// Physical legality of a compiled circuit. Returns one message per violation.
inline std::vector<std::string> check_legality(const CompiledCircuit& cc, const NetworkConfig& net) {
  std::vector<std::string> out;
  if (cc.circuit.num_qubits != net.total_physical()) {
    out.push_back("register width " + std::to_string(cc.circuit.num_qubits) + " != network size " +
                  std::to_string(net.total_physical()));
    return out;
  }
  const auto offsets = net.offsets();
  std::vector<std::set<std::pair<PhysQubit, PhysQubit>>> edges(net.qpus.size());
  for (QpuIndex k = 0; k < net.qpus.size(); ++k) {
    for (const auto& e : net.qpus[k].edges) {
      const auto a = static_cast<PhysQubit>(offsets[k] + e.a);
      const auto b = static_cast<PhysQubit>(offsets[k] + e.b);
      edges[k].insert({std::min(a, b), std::max(a, b)});
    }
  }
  std::set<std::pair<PhysQubit, PhysQubit>> pairs;
  for (const auto& ch : net.channels) {
    for (std::size_t p = 0; p < ch.capacity; ++p) {
      const auto a = static_cast<PhysQubit>(offsets[ch.a] + ch.comm_a[p]);
      const auto b = static_cast<PhysQubit>(offsets[ch.b] + ch.comm_b[p]);
      pairs.insert({std::min(a, b), std::max(a, b)});
    }
  }
  for (std::size_t i = 0; i < cc.circuit.gates.size(); ++i) {
    const auto& g = cc.circuit.gates[i];
    if (!g.two_qubit()) {
      continue;
    }
    const auto key = std::make_pair(std::min(g.qubits[0], g.qubits[1]), std::max(g.qubits[0], g.qubits[1]));
    if (g.kind == GateKind::epr) {
      if (pairs.count(key) == 0) {
        out.push_back("gate " + std::to_string(i) + " (" + format_gate(g) + "): not a channel comm pair");
      }
      continue;
    }
    const auto qa = cc.qpu_of(g.qubits[0]);
    if (qa != cc.qpu_of(g.qubits[1])) {
      out.push_back("gate " + std::to_string(i) + " (" + format_gate(g) + "): operands on different QPUs");
    } else if (edges[qa].count(key) == 0) {
      out.push_back("gate " + std::to_string(i) + " (" + format_gate(g) + "): operands not coupled");
    }
  }
  const auto check_layout = [&](const std::vector<PhysQubit>& layout, const char* name) {
    if (layout.size() != cc.num_logical) {
      out.push_back(std::string(name) + " layout has the wrong size");
      return;
    }
    std::set<PhysQubit> seen(layout.begin(), layout.end());
    if (seen.size() != layout.size()) {
      out.push_back(std::string(name) + " layout is not injective");
    }
    std::vector<std::size_t> load(net.qpus.size(), 0);
    for (auto p : layout) {
      if (p >= cc.circuit.num_qubits) {
        out.push_back(std::string(name) + " layout points outside the register");
        return;
      }
      ++load[cc.qpu_of(p)];
    }
    for (QpuIndex k = 0; k < net.qpus.size(); ++k) {
      if (load[k] > net.qpus[k].capacity()) {
        out.push_back(std::string(name) + " layout exceeds the capacity of " + net.qpus[k].id);
      }
    }
  };
  check_layout(cc.initial, "initial");
  check_layout(cc.final, "final");
  return out;
}

/// Soundness of a scheduler output against its input circuit: coverage,
/// co-location, capacity, the shared-control lock, share pairing, EPR
/// accounting and window dominance. Returns one message per violation.
inline std::vector<std::string> check_distributed(const Circuit& c, const DistributedCircuit& dc,
                                                  const NetworkConfig& net) {
  std::vector<std::string> out;
  const auto caps = net.capacities();
  if (dc.initial.partition.size() != c.num_qubits) {
    out.push_back("initial assignment has the wrong size");
    return out;
  }
  auto home = dc.initial.partition;
  std::vector<std::size_t> load(caps.size(), 0);
  for (auto h : home) {
    ++load.at(h);
  }
  std::multiset<std::pair<Qubit, QpuIndex>> shares;
  const auto shared = [&](Qubit q) {
    return std::any_of(shares.begin(), shares.end(), [q](const auto& s) { return s.first == q; });
  };
  std::map<std::size_t, std::vector<Gate>> emitted; // source index -> gates
  std::size_t epr = 0;

  for (std::size_t i = 0; i < dc.ops.size(); ++i) {
    const auto& op = dc.ops[i];
    const auto where = "op " + std::to_string(i) + ": ";
    if (op.is_remote) {
      const auto& r = op.remote;
      epr += r.epr_cost();
      if (r.channel >= net.channels.size() || !net.channels[r.channel].joins(r.source_qpu, r.target_qpu)) {
        out.push_back(where + "channel does not join the op's QPUs");
      }
      if (home.at(r.qubit) != r.source_qpu) {
        out.push_back(where + "source QPU is not the qubit's home");
      }
      switch (r.kind) {
      case RemoteKind::teledata:
        if (shared(r.qubit)) {
          out.push_back(where + "teledata of a qubit with an open share");
        }
        --load[home[r.qubit]];
        ++load[r.target_qpu];
        home[r.qubit] = r.target_qpu;
        if (load[r.target_qpu] > caps[r.target_qpu]) {
          out.push_back(where + "teledata overfills QPU " + net.qpus[r.target_qpu].id);
        }
        break;
      case RemoteKind::catent:
        shares.insert({r.qubit, r.target_qpu});
        break;
      case RemoteKind::catdisent: {
        const auto it = shares.find({r.qubit, r.target_qpu});
        if (it == shares.end()) {
          out.push_back(where + "catdisent without a matching catent");
        } else {
          shares.erase(it);
        }
        break;
      }
      }
      continue;
    }
    const auto& g = op.gate;
    emitted[op.source].push_back(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto q = g.qubits[k];
      const bool local = home[q] == op.qpu;
      const bool copy = shares.count({q, op.qpu}) > 0;
      if (!local && !copy) {
        out.push_back(where + "operand q" + std::to_string(q) + " is not available on the executing QPU");
      } else if (!local && !(g.two_qubit() && control_role(g.kind, k))) {
        out.push_back(where + "shared copy of q" + std::to_string(q) + " used outside a control role");
      }
      if (shared(q) && !(g.two_qubit() && control_role(g.kind, k))) {
        out.push_back(where + "q" + std::to_string(q) + " targeted while shared");
      }
    }
  }
  if (!shares.empty()) {
    out.push_back("shares left open at the end");
  }
  for (std::size_t s = 0; s < c.gates.size(); ++s) {
    const auto it = emitted.find(s);
    const auto& g = c.gates[s];
    if (it == emitted.end()) {
      out.push_back("gate " + std::to_string(s) + " missing from the output");
      continue;
    }
    const auto& got = it->second;
    bool ok = got.size() == 1 && got[0] == g;
    if (g.two_qubit()) {
      for (auto l : {Lowering::swap_cx, Lowering::cx_via_cz, Lowering::swap_via_cz}) {
        const bool applies = g.kind == (l == Lowering::cx_via_cz ? GateKind::cx : GateKind::swap);
        ok = ok || (applies && got == lowered_gates(g, l));
      }
    }
    if (!ok) {
      out.push_back("gate " + std::to_string(s) + " not emitted exactly once");
    }
  }
  if (emitted.size() != c.gates.size()) {
    out.push_back("output holds gates that are not in the input");
  }
  if (epr != dc.epr_pairs) {
    out.push_back("EPR count " + std::to_string(dc.epr_pairs) + " disagrees with the ops (" + std::to_string(epr) +
                  ")");
  }
  if (home != dc.final.partition) {
    out.push_back("final assignment disagrees with the replay");
  }
  for (const auto& w : dc.windows) {
    const auto kept = w.kept == Strategy::mixed ? w.epr_mixed : w.epr_telegate;
    if (w.telegate_feasible && kept > w.epr_telegate) {
      out.push_back("window [" + std::to_string(w.first) + "," + std::to_string(w.last) +
                    ") keeps more EPR pairs than its TeleGate-only variant");
    }
  }
  return out;
}

} // namespace dqcc

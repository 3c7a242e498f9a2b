#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/distributed.hpp"
#include "dqcc/router.hpp"

#include <cstddef>

namespace dqcc {

struct MetricsReport {
  std::size_t depth{0};
  std::size_t epr_pairs{0};
  std::size_t remote_layers{0}; // layers holding at least one gate of a remote op
  std::size_t swaps{0};         // inserted by the compiler
  std::size_t teledata{0};
  std::size_t catent{0};
  std::size_t windows_mixed{0}; // strategy windows that kept the mixed variant
  std::size_t windows_telegate{0};

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

inline MetricsReport compute_metrics(const CompiledCircuit& cc) {
  MetricsReport m;
  const auto lay = compute_layering(cc.circuit);
  m.depth = lay.depth();
  for (const auto& layer : lay.layers) {
    for (auto i : layer) {
      if (cc.circuit.gates[i].origin == GateOrigin::remote) {
        ++m.remote_layers;
        break;
      }
    }
  }
  for (const auto& g : cc.circuit.gates) {
    m.epr_pairs += g.kind == GateKind::epr ? 1 : 0;
    m.swaps += g.kind == GateKind::swap && g.origin != GateOrigin::program ? 1 : 0;
  }
  for (const auto& r : cc.remote) {
    m.teledata += r.op.kind == RemoteKind::teledata ? 1 : 0;
    m.catent += r.op.kind == RemoteKind::catent ? 1 : 0;
  }
  return m;
}

/// Adds the per-window strategy breakdown of the scheduler run.
inline MetricsReport compute_metrics(const CompiledCircuit& cc, const DistributedCircuit& dc) {
  auto m = compute_metrics(cc);
  for (const auto& w : dc.windows) {
    (w.kept == Strategy::mixed ? m.windows_mixed : m.windows_telegate) += 1;
  }
  return m;
}

} // namespace dqcc

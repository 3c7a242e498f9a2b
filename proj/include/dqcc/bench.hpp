#pragma once

#include "dqcc/distributed.hpp"
#include "dqcc/errors.hpp"
#include "dqcc/pipeline.hpp"

#include <string>
#include <vector>

namespace dqcc {

struct BenchGrid {
  std::vector<std::string> families{"qft"}; // qft, qft-noswap, graph, vqe
  std::vector<std::size_t> qubits{8};
  std::vector<std::string> networks{"net3"};
  std::size_t qpu{21}; // data qubits per heavy-hex QPU
  std::size_t comm{0}; // comm qubits per QPU, 0 = what the preset needs
  std::vector<std::size_t> capacities{1};
  std::vector<Strategy> strategies{Strategy::mixed, Strategy::telegate_only};
  std::uint64_t seed{1};
  std::size_t window{10};
  std::size_t vqe_reps{default_vqe_reps};
};

struct BenchRow {
  std::string circuit;
  std::size_t qubits{0};
  std::string network;
  std::size_t qpu{0};
  std::size_t capacity{0};
  Strategy strategy{Strategy::mixed};
  MetricsReport metrics;
  std::uint64_t seed{0};
  std::string error; // empty on success

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

inline constexpr const char* bench_csv_header =
    "circuit,qubits,network,qpu,capacity,strategy,depth,epr_pairs,remote_layers,swaps,seed,error";

namespace detail {

inline std::string error_tag(const std::exception& e) {
  if (dynamic_cast<const capacity_error*>(&e) != nullptr) {
    return "capacity";
  }
  if (dynamic_cast<const scheduling_error*>(&e) != nullptr) {
    return "scheduling";
  }
  if (dynamic_cast<const routing_error*>(&e) != nullptr) {
    return "routing";
  }
  if (dynamic_cast<const config_error*>(&e) != nullptr) {
    return "config";
  }
  return "invalid";
}

} // namespace detail

/// One row per grid cell in family, qubits, network, capacity, strategy
/// order. Failing cells keep zero metrics and carry an error tag.
inline std::vector<BenchRow> run_bench(const BenchGrid& grid) {
  std::vector<BenchRow> rows;
  for (const auto& fam : grid.families) {
    for (auto n : grid.qubits) {
      const auto spec = fam == "vqe" ? fam + ":" + std::to_string(n) + ":" + std::to_string(grid.vqe_reps)
                                     : fam + ":" + std::to_string(n);
      for (const auto& netname : grid.networks) {
        for (auto cap : grid.capacities) {
          for (auto strat : grid.strategies) {
            BenchRow row{fam, n, netname, grid.qpu, cap, strat, {}, grid.seed, {}};
            try {
              const auto c = circuit_from_spec(spec, grid.seed);
              const auto net = network_from_spec(netname, grid.qpu, cap, grid.comm);
              CompileOptions opts;
              opts.schedule.window = grid.window;
              opts.schedule.strategy = strat;
              opts.partition.seed = grid.seed;
              row.metrics = compile(c, net, opts).metrics;
            } catch (const error& e) {
              row.error = detail::error_tag(e);
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = std::string(bench_csv_header) + "\n";
  for (const auto& r : rows) {
    out += r.circuit + "," + std::to_string(r.qubits) + "," + r.network + "," + std::to_string(r.qpu) + "," +
           std::to_string(r.capacity) + "," + std::string(strategy_name(r.strategy)) + "," +
           std::to_string(r.metrics.depth) + "," + std::to_string(r.metrics.epr_pairs) + "," +
           std::to_string(r.metrics.remote_layers) + "," + std::to_string(r.metrics.swaps) + "," +
           std::to_string(r.seed) + "," + r.error + "\n";
  }
  return out;
}

} // namespace dqcc

#pragma once

#include "dqcc/checks.hpp"
#include "dqcc/circuit.hpp"
#include "dqcc/circuit_io.hpp"
#include "dqcc/distributed.hpp"
#include "dqcc/errors.hpp"
#include "dqcc/generators.hpp"
#include "dqcc/metrics.hpp"
#include "dqcc/network.hpp"
#include "dqcc/network_io.hpp"
#include "dqcc/network_presets.hpp"
#include "dqcc/partition.hpp"
#include "dqcc/router.hpp"
#include "dqcc/scheduler.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace dqcc {

struct CompileOptions {
  ScheduleOptions schedule;
  PartitionOptions partition;
  RouterOptions router;
};

struct CompileResult {
  Assignment assignment;
  DistributedCircuit distributed;
  CompiledCircuit compiled;
  MetricsReport metrics;
};

/// Partition, schedule remote gates, route. Throws on any stage failure.
inline CompileResult compile(const Circuit& c, const NetworkConfig& net, const CompileOptions& opts = {}) {
  validate(c);
  validate(net);
  CompileResult r;
  r.assignment = assign_qubits(c, net.capacities(), opts.partition);
  r.distributed = schedule(c, net, r.assignment, opts.schedule);
  r.compiled = route(r.distributed, net, opts.router);
  r.metrics = compute_metrics(r.compiled, r.distributed);
  return r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw invalid_argument_error("cannot read '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline constexpr std::size_t default_vqe_reps = 2;

namespace detail {

inline std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto c = s.find(':', start);
    out.push_back(s.substr(start, c - start));
    if (c == std::string::npos) {
      return out;
    }
    start = c + 1;
  }
}

inline std::size_t spec_number(const std::string& t, const std::string& spec) {
  const auto v = parse_int<std::size_t>(t);
  if (!v) {
    throw invalid_argument_error("bad number '" + t + "' in circuit spec '" + spec + "'");
  }
  return *v;
}

} // namespace detail

/// `qft:N`, `qft-noswap:N`, `graph:N`, `vqe:N[:REPS]`, or a file path
/// (`.qasm` files use the OpenQASM subset, anything else the native format).
inline Circuit circuit_from_spec(const std::string& spec, std::uint64_t seed = default_ansatz_seed) {
  const auto parts = detail::split_colon(spec);
  const auto& fam = parts[0];
  const bool generator = fam == "qft" || fam == "qft-noswap" || fam == "graph" || fam == "vqe";
  if (generator) {
    if (parts.size() < 2 || parts.size() > (fam == "vqe" ? 3U : 2U)) {
      throw invalid_argument_error("bad circuit spec '" + spec + "'");
    }
    const auto n = detail::spec_number(parts[1], spec);
    if (fam == "qft") {
      return gen_qft(n);
    }
    if (fam == "qft-noswap") {
      return gen_qft(n, false);
    }
    if (fam == "graph") {
      return gen_graph_state(n);
    }
    const auto reps = parts.size() == 3 ? detail::spec_number(parts[2], spec) : default_vqe_reps;
    return gen_vqe_ansatz(n, reps, seed);
  }
  const auto text = read_file(spec);
  if (spec.size() >= 5 && spec.compare(spec.size() - 5, 5, ".qasm") == 0) {
    return parse_qasm_subset(text);
  }
  return parse_circuit(text);
}

/// Communication qubits per QPU so that every preset channel gets `capacity` pairs.
inline std::size_t comm_needed(NetworkPreset p, std::size_t capacity) {
  std::vector<std::size_t> degree(p == NetworkPreset::net3 ? 3 : 5, 0);
  for (const auto& [a, b] : preset_edges(p)) {
    ++degree[a];
    ++degree[b];
  }
  return *std::max_element(degree.begin(), degree.end()) * capacity;
}

/// `net3` / `net5` built from heavy-hex QPUs with `qpu_data` data qubits
/// (comm qubits default to what the preset needs), or a JSON file.
inline NetworkConfig network_from_spec(const std::string& spec, std::size_t qpu_data, std::size_t capacity,
                                       std::size_t comm = 0) {
  if (spec == "net3" || spec == "net5") {
    const auto preset = spec == "net3" ? NetworkPreset::net3 : NetworkPreset::net5;
    const auto k = comm == 0 ? comm_needed(preset, capacity) : comm;
    return gen_network(preset, gen_heavy_hex_qpu(qpu_data, k), capacity);
  }
  return parse_network_config(read_file(spec));
}

} // namespace dqcc

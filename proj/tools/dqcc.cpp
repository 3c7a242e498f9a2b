// dqcc: distributed quantum circuit compiler front end.

#include "dqcc/dqcc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

namespace {

using namespace dqcc;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw invalid_argument_error("cannot write '" + path + "'");
  }
  out << text;
}

/// Machine-readable failure line on stderr.
int fail(const std::string& kind, const std::string& message) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return 1;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "mixed") {
    return Strategy::mixed;
  }
  if (s == "telegate") {
    return Strategy::telegate_only;
  }
  throw invalid_argument_error("unknown strategy '" + s + "'");
}

/// "40..50" or "8,12" style lists of sizes.
std::vector<std::size_t> parse_sizes(const std::vector<std::string>& items) {
  std::vector<std::size_t> out;
  for (const auto& it : items) {
    const auto dots = it.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoul(it));
      continue;
    }
    const auto lo = std::stoul(it.substr(0, dots));
    const auto hi = std::stoul(it.substr(dots + 2));
    for (auto n = lo; n <= hi; ++n) {
      out.push_back(n);
    }
  }
  return out;
}

struct Common {
  std::string network{"net3"};
  std::size_t qpu{21};
  std::size_t comm{0};
  std::size_t capacity{2};
  std::uint64_t seed{1};
};

void add_network_flags(CLI::App* app, Common& c) {
  app->add_option("--network", c.network, "net3, net5 or a network JSON file")->envname("DQCC_NETWORK");
  app->add_option("--qpu", c.qpu, "data qubits per heavy-hex QPU for presets")->envname("DQCC_QPU");
  app->add_option("--comm", c.comm, "comm qubits per preset QPU (0: as needed)")->envname("DQCC_COMM");
  app->add_option("--capacity", c.capacity, "comm pairs per preset channel")->envname("DQCC_CAPACITY");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dqcc - distributed quantum circuit compiler"};
  app.require_subcommand(1);

  // compile
  Common cc;
  std::string circuit;
  std::size_t window = 10;
  std::string strategy = "mixed";
  std::string out_path;
  std::string metrics_path;
  std::string distributed_path;
  auto* compile_cmd = app.add_subcommand("compile", "partition, schedule and route one circuit");
  compile_cmd->add_option("--circuit", circuit, "qft:N, qft-noswap:N, graph:N, vqe:N[:REPS] or a file")
      ->required()
      ->envname("DQCC_CIRCUIT");
  add_network_flags(compile_cmd, cc);
  compile_cmd->add_option("--window", window, "strategy window in gates")->envname("DQCC_WINDOW");
  compile_cmd->add_option("--strategy", strategy, "mixed or telegate")->envname("DQCC_STRATEGY");
  compile_cmd->add_option("--seed", cc.seed, "seed for every random choice")->envname("DQCC_SEED");
  compile_cmd->add_option("--out", out_path, "compiled circuit (default stdout)")->envname("DQCC_OUT");
  compile_cmd->add_option("--metrics", metrics_path, "metrics CSV row")->envname("DQCC_METRICS");
  compile_cmd->add_option("--distributed", distributed_path, "scheduler output before routing");

  // bench
  Common bc;
  std::vector<std::string> families{"qft"};
  std::vector<std::string> qubit_items{"8"};
  std::vector<std::string> networks{"net3"};
  std::vector<std::size_t> capacities{1};
  std::vector<std::string> strategies{"mixed", "telegate"};
  std::size_t bench_window = 10;
  std::size_t reps = default_vqe_reps;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "compile a grid of circuits and write one CSV row per cell");
  bench_cmd->add_option("--circuit", families, "circuit families (qft, qft-noswap, graph, vqe)")->delimiter(',');
  bench_cmd->add_option("--qubits", qubit_items, "qubit counts, e.g. 8,12 or 40..50")->delimiter(',');
  bench_cmd->add_option("--network", networks, "net3 and/or net5")->delimiter(',');
  bench_cmd->add_option("--qpu", bc.qpu, "data qubits per heavy-hex QPU")->envname("DQCC_QPU");
  bench_cmd->add_option("--comm", bc.comm, "comm qubits per QPU (0: as needed)")->envname("DQCC_COMM");
  bench_cmd->add_option("--capacity", capacities, "channel capacities")->delimiter(',');
  bench_cmd->add_option("--strategy", strategies, "mixed and/or telegate")->delimiter(',');
  bench_cmd->add_option("--window", bench_window, "strategy window in gates")->envname("DQCC_WINDOW");
  bench_cmd->add_option("--reps", reps, "VQE ansatz repetitions");
  bench_cmd->add_option("--seed", bc.seed, "seed for every random choice")->envname("DQCC_SEED");
  bench_cmd->add_option("--out", bench_out, "CSV path (default stdout)")->envname("DQCC_OUT");

  // gen-network
  Common gc;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen-network", "write a preset network as JSON");
  add_network_flags(gen_cmd, gc);
  gen_cmd->add_option("--out", gen_out, "JSON path (default stdout)")->envname("DQCC_OUT");

  // verify
  Common vc;
  std::string compiled_path;
  std::string mono;
  std::size_t trials = 3;
  auto* verify_cmd = app.add_subcommand("verify", "check a compiled circuit: legality, metrics, equivalence");
  verify_cmd->add_option("--compiled", compiled_path, "compiled circuit file")->required();
  add_network_flags(verify_cmd, vc);
  verify_cmd->add_option("--circuit", mono, "source circuit for the statevector equivalence check");
  verify_cmd->add_option("--trials", trials, "random input states");
  verify_cmd->add_option("--seed", vc.seed, "seed for inputs and branch sampling")->envname("DQCC_SEED");
  verify_cmd->add_option("--metrics", metrics_path, "metrics CSV row")->envname("DQCC_METRICS");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile_cmd->parsed()) {
      const auto c = circuit_from_spec(circuit, cc.seed);
      const auto net = network_from_spec(cc.network, cc.qpu, cc.capacity, cc.comm);
      CompileOptions opts;
      opts.schedule.window = window;
      opts.schedule.strategy = parse_strategy(strategy);
      opts.partition.seed = cc.seed;
      const auto r = compile(c, net, opts);
      write_output(out_path, serialize_compiled(r.compiled));
      if (!distributed_path.empty()) {
        write_output(distributed_path, serialize_distributed(r.distributed, net));
      }
      if (!metrics_path.empty()) {
        BenchRow row{circuit, c.num_qubits, cc.network, cc.qpu, cc.capacity, opts.schedule.strategy, r.metrics,
                     cc.seed, {}};
        write_output(metrics_path, bench_csv({row}));
      }
      return 0;
    }
    if (bench_cmd->parsed()) {
      BenchGrid grid;
      grid.families = families;
      grid.qubits = parse_sizes(qubit_items);
      grid.networks = networks;
      grid.qpu = bc.qpu;
      grid.comm = bc.comm;
      grid.capacities = capacities;
      grid.strategies.clear();
      for (const auto& s : strategies) {
        grid.strategies.push_back(parse_strategy(s));
      }
      grid.seed = bc.seed;
      grid.window = bench_window;
      grid.vqe_reps = reps;
      const auto rows = run_bench(grid);
      write_output(bench_out, bench_csv(rows));
      nlohmann::json failed = nlohmann::json::array();
      for (const auto& r : rows) {
        if (!r.error.empty()) {
          failed.push_back({{"circuit", r.circuit},
                            {"qubits", r.qubits},
                            {"network", r.network},
                            {"capacity", r.capacity},
                            {"strategy", std::string(strategy_name(r.strategy))},
                            {"error", r.error}});
        }
      }
      if (!failed.empty()) {
        std::cerr << nlohmann::json{{"error", "bench"}, {"failed_cells", failed}}.dump() << "\n";
        return 1;
      }
      return 0;
    }
    if (gen_cmd->parsed()) {
      write_output(gen_out, serialize_network_config(network_from_spec(gc.network, gc.qpu, gc.capacity, gc.comm)));
      return 0;
    }
    if (verify_cmd->parsed()) {
      const auto compiled = parse_compiled(read_file(compiled_path));
      const auto net = network_from_spec(vc.network, vc.qpu, vc.capacity, vc.comm);
      const auto violations = check_legality(compiled, net);
      const auto m = compute_metrics(compiled);
      std::cout << "depth " << m.depth << "\nepr_pairs " << m.epr_pairs << "\nremote_layers " << m.remote_layers
                << "\nswaps " << m.swaps << "\n";
      for (const auto& v : violations) {
        std::cout << "violation: " << v << "\n";
      }
      bool ok = violations.empty();
      if (!mono.empty()) {
        EquivalenceOptions eo;
        eo.trials = trials;
        eo.seed = vc.seed;
        const auto rep = check_equivalence(circuit_from_spec(mono, vc.seed), compiled, eo);
        std::cout << "equivalence " << (rep.pass ? "pass" : "fail") << " max_distance " << rep.max_distance
                  << " branches " << rep.branches << (rep.sampled ? " sampled" : "") << "\n";
        ok = ok && rep.pass;
      }
      if (!ok) {
        return fail("verify", violations.empty() ? "compiled circuit is not equivalent" : violations.front());
      }
      return 0;
    }
  } catch (const capacity_error& e) {
    return fail("capacity", e.what());
  } catch (const parse_error& e) {
    return fail("parse", e.what());
  } catch (const scheduling_error& e) {
    return fail("scheduling", e.what());
  } catch (const routing_error& e) {
    return fail("routing", e.what());
  } catch (const equivalence_failure& e) {
    return fail("equivalence", e.what());
  } catch (const error& e) {
    return fail("invalid", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include "dqcc/dqcc.hpp"
#include "fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dqcc;
using dqcc::fixture::assignment;

namespace {

struct Outcome {
  bool ok{true};
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s %d %s: %s\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
  failures += o.ok ? 0 : 1;
}

struct Case {
  std::string name;
  Circuit circuit;
  NetworkConfig net;
  DistributedCircuit dc;
  CompiledCircuit cc;
};

// Everything compiled during the run, reused by the accounting and legality checks.
std::vector<Case> compiled_cases;

Case compile_case(std::string name, const Circuit& c, const NetworkConfig& net, const Assignment* forced,
                  Strategy strategy = Strategy::mixed) {
  ScheduleOptions so;
  so.strategy = strategy;
  const auto a = forced != nullptr ? *forced : assign_qubits(c, net.capacities());
  auto dc = schedule(c, net, a, so);
  auto cc = route(dc, net);
  return {std::move(name), c, net, std::move(dc), std::move(cc)};
}

std::vector<std::pair<std::string, Circuit>> equivalence_circuits() {
  std::vector<std::pair<std::string, Circuit>> out;
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 16; ++i) {
    const std::size_t n = 3 + static_cast<std::size_t>(i % 4);
    out.emplace_back("random" + std::to_string(i) + "/" + std::to_string(n) + "q",
                     fixture::random_circuit(n, 6 + 2 * static_cast<std::size_t>(i % 4), 12, rng));
  }
  out.emplace_back("qft4", gen_qft(4));
  out.emplace_back("graph6", gen_graph_state(6));
  out.emplace_back("vqe4x2", gen_vqe_ansatz(4, 2));
  return out;
}

Outcome criterion_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, NetworkConfig>> nets{{"2qpu", fixture::two_qpu_line()},
                                                                {"3qpu", fixture::three_qpu_triangle()},
                                                                {"net3hex", network_from_spec("net3", 4, 1)}};
  std::size_t cases = 0;
  std::size_t enumerated = 0;
  std::size_t branches = 0;
  std::size_t remote_ops = 0;
  double worst = 0.0;
  std::vector<std::string> failed;
  for (const auto& [cname, c] : equivalence_circuits()) {
    for (const auto& [nname, net] : nets) {
      if (nname == "net3hex" && c.num_qubits > 4) {
        continue; // swap paths on heavy-hex push wider circuits past the simulator limit
      }
      std::vector<QpuIndex> spread(c.num_qubits);
      for (Qubit q = 0; q < c.num_qubits; ++q) {
        spread[q] = q % net.qpus.size();
      }
      const auto forced = assignment(spread, net);
      for (const auto* a : {static_cast<const Assignment*>(nullptr), &forced}) {
        auto k = compile_case(cname + "@" + nname + (a ? "/spread" : "/partitioned"), c, net, a);
        EquivalenceOptions eo;
        eo.max_enumerated_measurements = 16; // every branch, no sampling
        const auto rep = check_equivalence(c, k.cc, eo);
        ++cases;
        enumerated += rep.sampled ? 0 : 1;
        branches += rep.branches;
        remote_ops += k.cc.remote.size();
        worst = std::max(worst, rep.max_distance);
        if (!rep.pass) {
          failed.push_back(k.name + " (" + rep.diagnostic + ")");
        }
        compiled_cases.push_back(std::move(k));
      }
    }
  }
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << cases << " cases (" << enumerated << " with every branch enumerated), " << branches << " branches, "
    << remote_ops << " remote ops, max distance " << worst << ", " << secs << " s";
  for (const auto& f : failed) {
    d << "; failed " << f;
  }
  return {failed.empty() && cases >= 20 && secs < 300.0, d.str()};
}

Outcome criterion_primitives() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  std::size_t inputs = 0;

  Circuit td(3, 2);
  td.add(gates::epr(1, 2))
      .add(gates::cx(0, 1))
      .add(gates::h(0))
      .add(gates::measure(0, 0))
      .add(gates::measure(1, 1))
      .add(gates::conditioned(gates::x(2), 1))
      .add(gates::conditioned(gates::z(2), 0));
  for (std::size_t k = 0; k < 22; ++k) {
    const auto phi = k < 2 ? StateVector::basis(1, k) : StateVector::random(1, rng);
    const auto brs = simulate_branches(td, embed_state(phi, {0}, 3));
    if (brs.size() != 4) {
      return {false, "teledata expansion has " + std::to_string(brs.size()) + " branches"};
    }
    for (const auto& b : brs) {
      worst = std::max(worst, factor_against(b.state, {2}, phi, false).residual);
    }
    ++inputs;
  }

  Circuit tg(4, 2);
  tg.add(gates::epr(2, 3))
      .add(gates::cx(0, 2))
      .add(gates::measure(2, 0))
      .add(gates::conditioned(gates::x(3), 0))
      .add(gates::cz(3, 1))
      .add(gates::h(3))
      .add(gates::measure(3, 1))
      .add(gates::conditioned(gates::z(0), 1));
  Circuit cz(2);
  cz.add(gates::cz(0, 1));
  for (std::size_t k = 0; k < 24; ++k) {
    const auto in = k < 4 ? StateVector::basis(2, k) : StateVector::random(2, rng);
    const auto expected = simulate_unitary(cz, in);
    const auto brs = simulate_branches(tg, embed_state(in, {0, 1}, 4));
    if (brs.size() != 4) {
      return {false, "telegate expansion has " + std::to_string(brs.size()) + " branches"};
    }
    for (const auto& b : brs) {
      worst = std::max(worst, factor_against(b.state, {0, 1}, expected, false).residual);
    }
    ++inputs;
  }
  std::ostringstream d;
  d << inputs << " inputs x 4 branches, max distance " << worst;
  return {worst <= 1e-9, d.str()};
}

void add_scale_cases() {
  const auto net3 = network_from_spec("net3", 8, 2);
  const auto net5 = network_from_spec("net5", 21, 2);
  for (std::size_t n : {12u, 16u, 20u}) {
    for (auto st : {Strategy::mixed, Strategy::telegate_only}) {
      compiled_cases.push_back(compile_case("qft" + std::to_string(n) + "@net3/" + std::string(strategy_name(st)),
                                            gen_qft(n), net3, nullptr, st));
    }
  }
  for (const auto& spec : {"vqe:16", "graph:30", "qft:24", "vqe:40"}) {
    for (auto st : {Strategy::mixed, Strategy::telegate_only}) {
      compiled_cases.push_back(compile_case(std::string(spec) + "@net5/" + std::string(strategy_name(st)),
                                            circuit_from_spec(spec, 1), net5, nullptr, st));
    }
  }
}

Outcome criterion_epr_accounting() {
  std::size_t total = 0;
  for (const auto& k : compiled_cases) {
    const auto gen = k.cc.circuit.count(GateKind::epr);
    const auto ops = k.dc.count(RemoteKind::teledata) + k.dc.count(RemoteKind::catent);
    if (k.dc.epr_pairs != gen || gen != ops) {
      return {false, k.name + ": scheduler " + std::to_string(k.dc.epr_pairs) + ", epr gates " +
                         std::to_string(gen) + ", ops " + std::to_string(ops)};
    }
    total += gen;
  }
  return {true, std::to_string(compiled_cases.size()) + " compiled circuits, " + std::to_string(total) +
                    " EPR pairs, all three counts equal"};
}

Outcome criterion_legality() {
  std::size_t two_qubit = 0;
  for (const auto& k : compiled_cases) {
    const auto v = check_legality(k.cc, k.net);
    if (!v.empty()) {
      return {false, k.name + ": " + v.front()};
    }
    const auto d = check_distributed(k.circuit, k.dc, k.net);
    if (!d.empty()) {
      return {false, k.name + ": " + d.front()};
    }
    two_qubit += k.cc.circuit.two_qubit_count();
  }
  return {true, std::to_string(two_qubit) + " two-qubit gates in " + std::to_string(compiled_cases.size()) +
                    " outputs, no violation"};
}

InteractionGraph make_graph(std::size_t n, const std::vector<std::pair<Qubit, Qubit>>& edges) {
  InteractionGraph g;
  g.num_vertices = n;
  for (auto [u, v] : edges) {
    g.add(u, v);
  }
  return g;
}

Outcome criterion_partition() {
  std::vector<std::pair<Qubit, Qubit>> cyc;
  for (Qubit i = 0; i < 12; ++i) {
    cyc.emplace_back(i, (i + 1) % 12);
  }
  const auto cycle = make_graph(12, cyc);
  std::vector<std::pair<Qubit, Qubit>> tw;
  for (Qubit base : {0u, 4u}) {
    for (Qubit i = 0; i < 4; ++i) {
      for (Qubit j = i + 1; j < 4; ++j) {
        tw.emplace_back(base + i, base + j);
      }
    }
  }
  tw.emplace_back(3, 4);
  const auto twins = make_graph(8, tw);
  const auto c1 = cut_cost(kway_partition(cycle, {4, 4, 4}), cycle);
  const auto c2 = cut_cost(kway_partition(twins, {4, 4}), twins);

  std::mt19937_64 rng(100);
  std::bernoulli_distribution coin(0.4);
  std::size_t monotone = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 9);
    InteractionGraph g;
    g.num_vertices = n;
    for (Qubit u = 0; u < n; ++u) {
      for (Qubit v = u + 1; v < n; ++v) {
        if (coin(rng)) {
          g.add(u, v, 1 + static_cast<Weight>(rng() % 3));
        }
      }
    }
    const std::size_t k = 2 + static_cast<std::size_t>(t % 2);
    Assignment a{std::vector<QpuIndex>(n), std::vector<std::size_t>(k, n / k + 1)};
    for (std::size_t v = 0; v < n; ++v) {
      a.partition[v] = static_cast<QpuIndex>(rng() % k);
    }
    if (!a.feasible()) {
      for (std::size_t v = 0; v < n; ++v) {
        a.partition[v] = v % k;
      }
    }
    const auto r = refine_assignment(a, g);
    monotone += r.feasible() && cut_cost(r, g) <= cut_cost(a, g) ? 1 : 0;
  }
  std::ostringstream d;
  d << "12-cycle cut " << c1 << " (optimum 3), twin cliques cut " << c2 << " (optimum 1), refinement monotone on "
    << monotone << "/100 random graphs";
  return {c1 == 3 && c2 == 1 && monotone == 100, d.str()};
}

Outcome criterion_fig6() {
  const auto g = make_graph(12, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}, {8, 9}, {9, 10}, {10, 11},
                                 {3, 4}, {3, 5}, {11, 6}, {11, 7}, {0, 8}, {1, 9}, {5, 10}, {4, 10}});
  const Assignment a{{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2}, {6, 6, 6}};
  const auto before = cut_cost(a, g);
  const auto r = refine_assignment(a, g);
  const auto after = cut_cost(r, g);
  return {before == 8 && after <= 6 && r.feasible(),
          "initial cut " + std::to_string(before) + ", refined cut " + std::to_string(after)};
}

Outcome criterion_qft_trend() {
  std::ostringstream d;
  bool ok = true;
  for (std::size_t cap : {1u, 2u}) {
    const auto net = network_from_spec("net3", 8, cap);
    for (std::size_t n : {12u, 16u, 20u}) {
      const auto c = gen_qft(n);
      const auto a = assign_qubits(c, net.capacities());
      ScheduleOptions tg;
      tg.strategy = Strategy::telegate_only;
      const auto mixed = schedule(c, net, a);
      const auto only = schedule(c, net, a, tg);
      ok = ok && mixed.epr_pairs <= only.epr_pairs;
      for (const auto& w : mixed.windows) {
        const auto kept = w.kept == Strategy::mixed ? w.epr_mixed : w.epr_telegate;
        ok = ok && (!w.telegate_feasible || kept <= w.epr_telegate);
      }
      d << "qft" << n << "/cap" << cap << " mixed " << mixed.epr_pairs << " telegate " << only.epr_pairs << "; ";
    }
  }
  return {ok, d.str()};
}

Outcome criterion_strategy_purity() {
  std::size_t telegate_runs = 0;
  for (const auto& k : compiled_cases) {
    if (k.name.find("/telegate") == std::string::npos) {
      continue;
    }
    ++telegate_runs;
    if (k.dc.count(RemoteKind::teledata) != 0 || serialize_distributed(k.dc, k.net).find("teledata") != std::string::npos) {
      return {false, k.name + " contains TeleData"};
    }
  }
  std::size_t compared = 0;
  for (const auto& k : compiled_cases) {
    auto scaled = k.net;
    scaled.mean_decoherence_time *= 10.0;
    ScheduleOptions so;
    so.strategy = k.name.find("/telegate") == std::string::npos ? Strategy::mixed : Strategy::telegate_only;
    if (schedule(k.circuit, scaled, k.dc.initial, so) != k.dc) {
      return {false, k.name + ": decisions changed under 10x decoherence time"};
    }
    ++compared;
  }
  return {telegate_runs > 0, std::to_string(telegate_runs) + " telegate-only runs without TeleData, " +
                                 std::to_string(compared) + " schedules unchanged under 10x decoherence time"};
}

Outcome criterion_determinism() {
  const auto net = network_from_spec("net5", 21, 2);
  for (const auto& spec : {"qft:30", "vqe:45", "graph:40"}) {
    const auto c = circuit_from_spec(spec, 5);
    CompileOptions o;
    o.partition.seed = 5;
    if (serialize_compiled(compile(c, net, o).compiled) != serialize_compiled(compile(c, net, o).compiled)) {
      return {false, std::string(spec) + ": compiled output differs between runs"};
    }
  }
  BenchGrid g;
  g.families = {"qft", "vqe", "graph"};
  g.qubits = {12, 20};
  g.networks = {"net3", "net5"};
  g.qpu = 8;
  g.capacities = {1, 2};
  g.seed = 5;
  const auto a = bench_csv(run_bench(g));
  const auto b = bench_csv(run_bench(g));
  if (a != b) {
    return {false, "bench CSV differs between runs"};
  }
  return {true, "3 compiled outputs and a " + std::to_string(std::count(a.begin(), a.end(), '\n') - 1) +
                    "-row CSV byte-identical across two runs"};
}

} // namespace

int main() {
  report(1, "equivalence suite", criterion_equivalence);
  report(2, "primitive identities", criterion_primitives);
  add_scale_cases();
  report(3, "EPR accounting", criterion_epr_accounting);
  report(4, "legality", criterion_legality);
  report(5, "partition quality", criterion_partition);
  report(6, "refinement 8 -> 6", criterion_fig6);
  report(7, "QFT mixed <= telegate", criterion_qft_trend);
  report(8, "strategy-flag purity", criterion_strategy_purity);
  report(9, "determinism", criterion_determinism);
  return failures == 0 ? 0 : 1;
}

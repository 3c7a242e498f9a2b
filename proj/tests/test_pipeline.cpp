#include "dqcc/dqcc.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace dqcc;

TEST(Specs, Circuits) {
  EXPECT_EQ(circuit_from_spec("qft:5"), gen_qft(5));
  EXPECT_EQ(circuit_from_spec("qft-noswap:5"), gen_qft(5, false));
  EXPECT_EQ(circuit_from_spec("graph:6"), gen_graph_state(6));
  EXPECT_EQ(circuit_from_spec("vqe:6:3", 4), gen_vqe_ansatz(6, 3, 4));
  EXPECT_EQ(circuit_from_spec("vqe:6", 4), gen_vqe_ansatz(6, default_vqe_reps, 4));
  EXPECT_THROW(circuit_from_spec("qft:x"), invalid_argument_error);
  EXPECT_THROW(circuit_from_spec("qft:4:2"), invalid_argument_error);
  EXPECT_THROW(circuit_from_spec("/nonexistent/file.txt"), invalid_argument_error);
}

TEST(Specs, CircuitFiles) {
  const std::string native = ::testing::TempDir() + "dqcc_spec.txt";
  const std::string qasm = ::testing::TempDir() + "dqcc_spec.qasm";
  std::ofstream(native) << serialize_circuit(gen_qft(4));
  std::ofstream(qasm) << export_qasm(gen_qft(4));
  EXPECT_EQ(circuit_from_spec(native), gen_qft(4));
  EXPECT_EQ(circuit_from_spec(qasm), gen_qft(4));
  std::remove(native.c_str());
  std::remove(qasm.c_str());
}

TEST(Specs, Networks) {
  const auto n3 = network_from_spec("net3", 8, 2);
  EXPECT_EQ(n3.qpus.size(), 3u);
  EXPECT_EQ(n3.qpus[0].comm_qubits.size(), 4u);
  const auto n5 = network_from_spec("net5", 21, 1);
  EXPECT_EQ(n5.qpus.size(), 5u);
  EXPECT_EQ(network_from_spec("net3", 21, 2, 8).qpus[0].comm_qubits.size(), 8u);
}

TEST(Bench, GridArithmetic) {
  BenchGrid g;
  g.families = {"qft"};
  g.qubits = {8, 12};
  g.qpu = 8;
  g.capacities = {1, 2};
  const auto rows = run_bench(g);
  ASSERT_EQ(rows.size(), 8u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
  }
  EXPECT_EQ(rows[0].qubits, 8u);
  EXPECT_EQ(rows[0].capacity, 1u);
  EXPECT_EQ(rows[0].strategy, Strategy::mixed);
  EXPECT_EQ(rows[1].strategy, Strategy::telegate_only);
  EXPECT_EQ(rows[2].capacity, 2u);
  EXPECT_EQ(rows[4].qubits, 12u);
}

TEST(Bench, PaperShapedGridRowCount) {
  // 11 sizes x 3 capacities per strategy
  BenchGrid g;
  g.families = {"vqe"};
  g.qubits.clear();
  for (std::size_t n = 40; n <= 50; ++n) {
    g.qubits.push_back(n);
  }
  g.capacities = {2, 3, 4};
  const auto rows = run_bench(g);
  EXPECT_EQ(rows.size(), 66u);
  std::size_t mixed = 0;
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.qubits << " cap " << r.capacity << ": " << r.error;
    mixed += r.strategy == Strategy::mixed ? 1 : 0;
    EXPECT_LE(r.metrics.remote_layers, r.metrics.depth);
  }
  EXPECT_EQ(mixed, 33u);
}

TEST(Bench, CapacityErrorRow) {
  BenchGrid g;
  g.qubits = {30};
  g.qpu = 8;
  g.strategies = {Strategy::mixed};
  const auto rows = run_bench(g);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].error, "capacity");
  EXPECT_NE(bench_csv(rows).find(",capacity\n"), std::string::npos);
}

TEST(Bench, Deterministic) {
  BenchGrid g;
  g.families = {"qft", "graph", "vqe"};
  g.qubits = {12, 16};
  g.networks = {"net3", "net5"};
  g.qpu = 8;
  g.capacities = {1, 2};
  g.seed = 9;
  const auto a = bench_csv(run_bench(g));
  const auto b = bench_csv(run_bench(g));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), bench_csv_header);
}

TEST(Pipeline, DeterministicCompiledText) {
  const auto net = network_from_spec("net5", 21, 2);
  for (const auto& spec : {"qft:24", "vqe:30", "graph:40"}) {
    const auto c = circuit_from_spec(spec, 3);
    EXPECT_EQ(serialize_compiled(compile(c, net).compiled), serialize_compiled(compile(c, net).compiled));
  }
}

TEST(Pipeline, Net5VqeWithUnlinkedPairs) {
  const auto net = network_from_spec("net5", 21, 2);
  const auto c = circuit_from_spec("vqe:16", 1);
  for (auto st : {Strategy::mixed, Strategy::telegate_only}) {
    CompileOptions o;
    o.schedule.strategy = st;
    const auto r = compile(c, net, o);
    const auto v = check_distributed(c, r.distributed, net);
    EXPECT_TRUE(v.empty()) << v.front();
    EXPECT_TRUE(check_legality(r.compiled, net).empty());
  }
}

TEST(Pipeline, EprAccountingAgrees) {
  const auto net = network_from_spec("net3", 8, 1);
  for (const auto& c : {gen_qft(20), gen_graph_state(20), gen_vqe_ansatz(20, 2)}) {
    const auto r = compile(c, net);
    EXPECT_EQ(r.metrics.epr_pairs, r.distributed.epr_pairs);
    EXPECT_EQ(r.metrics.epr_pairs, r.metrics.teledata + r.metrics.catent);
    EXPECT_EQ(r.metrics.windows_mixed + r.metrics.windows_telegate, r.distributed.windows.size());
  }
}

TEST(Pipeline, SmallEndToEndEquivalence) {
  const auto net = fixture::three_qpu_triangle();
  for (const auto& c : {gen_qft(4), gen_graph_state(6), gen_vqe_ansatz(4, 2)}) {
    const auto r = compile(c, net);
    const auto rep = check_equivalence(c, r.compiled);
    EXPECT_TRUE(rep.pass) << rep.diagnostic;
  }
}

TEST(Pipeline, PresetNetworkEquivalenceUsesTouchedQubitsOnly) {
  const auto net = network_from_spec("net3", 8, 1);
  const auto c = gen_qft(4);
  const auto r = compile(c, net);
  ASSERT_GT(r.compiled.circuit.num_qubits, max_sim_qubits);
  const auto rep = check_equivalence(c, r.compiled);
  EXPECT_TRUE(rep.pass) << rep.diagnostic;
}

#include "dqcc/dqcc.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <deque>

using namespace dqcc;
using dqcc::fixture::assignment;

namespace {

std::vector<std::vector<PhysQubit>> line_adj(std::size_t n) {
  std::vector<std::vector<PhysQubit>> adj(n);
  for (PhysQubit p = 0; p + 1 < n; ++p) {
    adj[p].push_back(p + 1);
    adj[p + 1].push_back(p);
  }
  return adj;
}

std::size_t eccentricity(const std::vector<std::vector<PhysQubit>>& adj, PhysQubit s) {
  std::vector<std::size_t> dist(adj.size(), SIZE_MAX);
  std::deque<PhysQubit> q{s};
  dist[s] = 0;
  std::size_t ecc = 0;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    ecc = std::max(ecc, dist[v]);
    for (auto w : adj[v]) {
      if (dist[w] == SIZE_MAX) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    }
  }
  return ecc;
}

// QPU0: data 0-1-2, comm 3 on 1. QPU1: data 0-1-2, comm 3 on `anchor1`.
NetworkConfig pair_net(PhysQubit anchor0, PhysQubit anchor1) {
  NetworkConfig net;
  net.qpus.push_back(fixture::line_qpu("QPU0", 3, {anchor0}));
  net.qpus.push_back(fixture::line_qpu("QPU1", 3, {anchor1}));
  net.channels.push_back(fixture::channel(0, 1, {3}, {3}));
  validate(net);
  return net;
}

CompiledCircuit compile_on(const Circuit& c, const NetworkConfig& net, std::vector<QpuIndex> part) {
  return route(schedule(c, net, assignment(std::move(part), net)), net);
}

} // namespace

TEST(SwapPath, Line) {
  const auto adj = line_adj(4);
  EXPECT_TRUE(swap_path(adj, 0, 1).empty());
  EXPECT_EQ(swap_path(adj, 0, 3).size(), 2u);
  EXPECT_EQ(shortest_path(adj, 0, 3), (std::vector<PhysQubit>{0, 1, 2, 3}));
}

TEST(SwapPath, Disconnected) {
  std::vector<std::vector<PhysQubit>> adj{{1}, {0}, {}};
  EXPECT_THROW(swap_path(adj, 0, 2), routing_error);
}

TEST(SwapPath, HeavyHexBoundedByDiameter) {
  const auto q = gen_heavy_hex_qpu(21, 8);
  const auto adj = q.adjacency();
  std::size_t diameter = 0;
  for (PhysQubit p = 0; p < q.num_physical(); ++p) {
    diameter = std::max(diameter, eccentricity(adj, p));
  }
  for (auto a : q.data_qubits) {
    for (auto b : q.data_qubits) {
      if (a != b) {
        EXPECT_LE(swap_path(adj, a, b).size() + 1, diameter);
      }
    }
  }
}

TEST(SelectComm, LeastRecentlyUsed) {
  const auto ch = fixture::channel(0, 1, {5, 6}, {7, 8});
  EXPECT_EQ(select_comm_qubit(ch, 0, {5, 3}, {0, 0}), 6u);
  EXPECT_EQ(select_comm_qubit(ch, 1, {5, 3}, {0, 0}), 8u);
  EXPECT_EQ(select_comm_qubit(ch, 0, {4, 4}, {0, 0}), 5u);
  EXPECT_EQ(select_comm_qubit(ch, 0, {5, 3}, {0, 1}), 5u);
  EXPECT_THROW(select_comm_qubit(ch, 0, {5, 3}, {1, 1}), routing_error);

  const auto one = fixture::channel(0, 1, {4}, {4});
  EXPECT_EQ(select_comm_qubit(one, 0, {99}, {0}), 4u);
}

TEST(Route, AdjacentNeedsNoSwaps) {
  // both logical qubits land on data 0, next to the comm qubit
  const auto net = pair_net(0, 0);
  Circuit c(2);
  c.add(gates::cz(0, 1));
  const auto cc = compile_on(c, net, {0, 1});
  EXPECT_EQ(cc.circuit.count(GateKind::swap), 0u);
  EXPECT_EQ(cc.circuit.count(GateKind::epr), 1u);
}

TEST(Route, TwoHopsOneSwap) {
  // q0 on QPU0 data 0 is two hops from comm 3 (anchored on data 1)
  const auto net = pair_net(1, 0);
  Circuit c(2);
  c.add(gates::cz(0, 1));
  const auto cc = compile_on(c, net, {0, 1});
  EXPECT_EQ(cc.circuit.count(GateKind::swap), 1u);
  const auto& g = cc.circuit.gates;
  ASSERT_GE(g.size(), 2u);
  EXPECT_EQ(g[0].kind, GateKind::swap);
  EXPECT_EQ(g[1].kind, GateKind::epr);
  EXPECT_TRUE(check_legality(cc, net).empty());
}

TEST(Route, PrimitiveShapes) {
  const auto net = fixture::two_qpu_line();
  Circuit c(2);
  c.add(gates::cx(0, 1)).add(gates::h(0)).add(gates::cx(0, 1));
  const auto dc = schedule(c, net, assignment({0, 1}, net));
  const auto cc = route(dc, net);
  for (const auto& r : cc.remote) {
    std::size_t epr = 0;
    std::size_t meas = 0;
    for (auto i = r.first_gate; i < r.last_gate; ++i) {
      epr += cc.circuit.gates[i].kind == GateKind::epr ? 1 : 0;
      meas += cc.circuit.gates[i].kind == GateKind::measure ? 1 : 0;
    }
    switch (r.op.kind) {
    case RemoteKind::teledata:
      EXPECT_EQ(epr, 1u);
      EXPECT_EQ(meas, 2u);
      break;
    case RemoteKind::catent:
      EXPECT_EQ(epr, 1u);
      EXPECT_EQ(meas, 1u);
      break;
    case RemoteKind::catdisent:
      EXPECT_EQ(epr, 0u);
      EXPECT_EQ(meas, 1u);
      break;
    }
  }
}

TEST(Route, LegalOnPresets) {
  const auto net3 = gen_network(NetworkPreset::net3, gen_heavy_hex_qpu(8, 4), 2);
  const auto net5 = gen_network(NetworkPreset::net5, gen_heavy_hex_qpu(21, 8), 2);
  for (const auto* net : {&net3, &net5}) {
    for (const auto& c : {gen_qft(16), gen_graph_state(20), gen_vqe_ansatz(20, 2)}) {
      const auto r = compile(c, *net);
      const auto v = check_legality(r.compiled, *net);
      EXPECT_TRUE(v.empty()) << v.front();
      EXPECT_EQ(r.compiled.circuit.count(GateKind::epr), r.distributed.epr_pairs);
    }
  }
}

TEST(Route, CommReuseRestores) {
  // capacity-1 channel used many times; teledata parks states on comm qubits
  const auto net = fixture::two_qpu_line();
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const auto c = fixture::random_circuit(6, 30, 40, rng);
    const auto cc = compile_on(c, net, {0, 1, 0, 1, 0, 1});
    const auto v = check_legality(cc, net);
    EXPECT_TRUE(v.empty()) << v.front();
  }
}

TEST(CompiledIo, RoundTrip) {
  const auto net = gen_network(NetworkPreset::net3, gen_heavy_hex_qpu(8, 4), 1);
  for (const auto& c : {gen_qft(12), gen_vqe_ansatz(10, 2)}) {
    const auto cc = compile(c, net).compiled;
    const auto text = serialize_compiled(cc);
    const auto back = parse_compiled(text);
    EXPECT_EQ(back, cc);
    EXPECT_EQ(serialize_compiled(back), text);
  }
}

TEST(CompiledIo, FooterHoldsFinalLayout) {
  const auto net = fixture::two_qpu_line();
  Circuit c(2);
  c.add(gates::cz(0, 1));
  const auto text = serialize_compiled(compile_on(c, net, {0, 1}));
  EXPECT_NE(text.find("final"), std::string::npos);
  EXPECT_NE(text.find("epr "), std::string::npos);
  EXPECT_NE(text.find("@QPU"), std::string::npos);
}

TEST(Metrics, Examples) {
  const auto net = fixture::two_qpu_line();
  const auto local = compute_metrics(compile_on(gen_qft(4), net, {0, 0, 0, 0}));
  EXPECT_EQ(local.epr_pairs, 0u);
  EXPECT_EQ(local.remote_layers, 0u);

  Circuit c(2);
  c.add(gates::cz(0, 1));
  const auto tg = compute_metrics(compile_on(c, net, {0, 1}));
  EXPECT_EQ(tg.epr_pairs, 1u);
  EXPECT_EQ(tg.catent, 1u);
  EXPECT_LE(tg.remote_layers, tg.depth);

  const auto cc = compile_on(fixture::retargeted_control(), net, {0, 1});
  const auto td = compute_metrics(cc);
  EXPECT_EQ(td.teledata, 1u);
  EXPECT_EQ(td.epr_pairs, 1u);
  EXPECT_GE(cc.circuit.count(GateKind::measure), 2u);
}

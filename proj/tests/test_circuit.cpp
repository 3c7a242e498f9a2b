#include "dqcc/dqcc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace dqcc;

TEST(Generators, QftSingleQubitIsH) {
  const auto c = gen_qft(1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.gates[0], gates::h(0));
  EXPECT_EQ(c.two_qubit_count(), 0u);
}

TEST(Generators, QftFourCounts) {
  const auto c = gen_qft(4);
  EXPECT_EQ(c.count(GateKind::h), 4u);
  EXPECT_EQ(c.count(GateKind::cp), 6u);
  EXPECT_EQ(c.count(GateKind::swap), 2u);
  EXPECT_EQ(c.two_qubit_count(), 8u);
}

TEST(Generators, QftAnglesHalve) {
  const auto c = gen_qft(3, false);
  // h0 cp(1,0) cp(2,0) h1 cp(2,1) h2
  ASSERT_EQ(c.size(), 6u);
  EXPECT_NEAR(c.gates[1].angle, std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(c.gates[2].angle, std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(c.gates[4].angle, std::numbers::pi / 2, 1e-15);
}

TEST(Generators, QftZeroRejected) { EXPECT_THROW(gen_qft(0), invalid_argument_error); }

TEST(Generators, GraphStateTwo) {
  const auto c = gen_graph_state(2);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.gates[0], gates::h(0));
  EXPECT_EQ(c.gates[1], gates::h(1));
  EXPECT_EQ(c.gates[2], gates::cz(0, 1));
}

TEST(Generators, GraphStateSixLadder) {
  const auto c = gen_graph_state(6);
  EXPECT_EQ(c.count(GateKind::h), 6u);
  EXPECT_EQ(c.count(GateKind::cz), 7u);
}

TEST(Generators, GraphStateOddRejected) { EXPECT_THROW(gen_graph_state(5), invalid_argument_error); }

TEST(Generators, VqeCounts) {
  const auto small = gen_vqe_ansatz(2, 1);
  EXPECT_EQ(small.size(), 5u);
  EXPECT_EQ(small.count(GateKind::ry), 4u);
  EXPECT_EQ(small.count(GateKind::cx), 1u);

  const auto c = gen_vqe_ansatz(5, 3);
  EXPECT_EQ(c.size(), 32u);
  EXPECT_EQ(c.two_qubit_count(), 12u);
}

TEST(Generators, VqeDeterministic) {
  EXPECT_EQ(gen_vqe_ansatz(6, 2, 7), gen_vqe_ansatz(6, 2, 7));
  EXPECT_NE(gen_vqe_ansatz(6, 2, 7), gen_vqe_ansatz(6, 2, 8));
  EXPECT_THROW(gen_vqe_ansatz(1, 1), invalid_argument_error);
  EXPECT_THROW(gen_vqe_ansatz(3, 0), invalid_argument_error);
}

TEST(Layering, Examples) {
  Circuit a(2);
  a.add(gates::h(0)).add(gates::h(1));
  EXPECT_EQ(compute_layering(a).depth(), 1u);

  Circuit b(2);
  b.add(gates::h(0)).add(gates::cx(0, 1)).add(gates::h(1));
  EXPECT_EQ(compute_layering(b).depth(), 3u);

  EXPECT_EQ(compute_layering(gen_qft(3, false)).depth(), 5u);
}

TEST(Layering, ChainDepthIsGateCount) {
  Circuit c(3);
  for (int i = 0; i < 7; ++i) {
    c.add(gates::t(1)).add(gates::cz(1, static_cast<Qubit>(i % 2 == 0 ? 0 : 2)));
  }
  EXPECT_EQ(compute_layering(c).depth(), c.size());
}

TEST(Layering, InvariantsOnQft) {
  const auto c = gen_qft(7);
  const auto l = compute_layering(c);
  std::vector<int> seen(c.size(), 0);
  for (std::size_t k = 0; k < l.depth(); ++k) {
    std::set<Qubit> used;
    for (auto i : l.layers[k]) {
      ++seen[i];
      EXPECT_EQ(l.layer_of[i], k);
      for (std::size_t s = 0; s < c.gates[i].size(); ++s) {
        EXPECT_TRUE(used.insert(c.gates[i].qubits[s]).second);
      }
    }
  }
  for (auto s : seen) {
    EXPECT_EQ(s, 1);
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto& gi = c.gates[i];
      bool share = false;
      for (std::size_t s = 0; s < gi.size(); ++s) {
        share = share || c.gates[j].acts_on(gi.qubits[s]);
      }
      if (share) {
        EXPECT_GT(l.layer_of[i], l.layer_of[j]);
      }
    }
  }
}

TEST(Layering, ClassicalBitsOrder) {
  Circuit c(2, 1);
  c.add(gates::measure(0, 0)).add(gates::conditioned(gates::x(1), 0));
  EXPECT_EQ(compute_layering(c).depth(), 2u);
}

TEST(CircuitIo, NativeRoundTrip) {
  for (const auto& c : {gen_qft(5), gen_graph_state(6), gen_vqe_ansatz(4, 2)}) {
    EXPECT_EQ(parse_circuit(serialize_circuit(c)), c);
  }
  Circuit m(2, 2);
  m.add(gates::h(0)).add(gates::measure(0, 0)).add(gates::conditioned(gates::z(1), 0));
  EXPECT_EQ(parse_circuit(serialize_circuit(m)), m);
}

TEST(CircuitIo, NativeFormat) {
  const auto c = parse_circuit("# comment\nqubits 2\nh 0\ncx 0 1\ncp 0 1 1.5707963\n");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.num_qubits, 2u);
  EXPECT_EQ(c.gates[1], gates::cx(0, 1));
  EXPECT_NEAR(c.gates[2].angle, 1.5707963, 1e-12);
}

TEST(CircuitIo, NativeErrorsCarryLine) {
  try {
    parse_circuit("qubits 2\nh 0\nfoo 1\n");
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_circuit("qubits 2\ncx 0 0\n"), error);
  EXPECT_THROW(parse_circuit("qubits 2\nh 5\n"), error);
}

TEST(Qasm, Subset) {
  const auto c = parse_qasm_subset("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n");
  EXPECT_EQ(c.num_qubits, 2u);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.gates[1], gates::cx(0, 1));
}

TEST(Qasm, GateDefinitionRejected) {
  try {
    parse_qasm_subset("OPENQASM 2.0;\nqreg q[2];\ngate foo a { h a; }\n");
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported: gate definitions"), std::string::npos);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Qasm, RoundTrip) {
  for (const auto& c : {gen_qft(4), gen_graph_state(4), gen_vqe_ansatz(3, 1)}) {
    EXPECT_EQ(parse_qasm_subset(export_qasm(parse_circuit(serialize_circuit(c)))), c);
  }
}

TEST(Validate, MeasureTwiceNeedsReuse) {
  Circuit c(1, 1);
  c.add(gates::measure(0, 0)).add(gates::measure(0, 0));
  EXPECT_THROW(validate(c), invalid_argument_error);
  EXPECT_NO_THROW(validate(c, true));
}

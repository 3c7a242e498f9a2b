#pragma once

#include "dqcc/dqcc.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace dqcc::fixture {

// Data qubits 0..data-1 on a line; comm qubit data+i hangs off data qubit anchors[i].
inline QPUConfig line_qpu(std::string id, std::size_t data, const std::vector<PhysQubit>& anchors) {
  QPUConfig q;
  q.id = std::move(id);
  for (PhysQubit p = 0; p < data; ++p) {
    q.data_qubits.push_back(p);
    if (p + 1 < data) {
      q.edges.push_back({p, p + 1, false});
    }
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const auto c = static_cast<PhysQubit>(data + i);
    q.comm_qubits.push_back(c);
    q.edges.push_back({anchors[i], c, false});
  }
  return q;
}

inline Channel channel(QpuIndex a, QpuIndex b, std::vector<PhysQubit> ca, std::vector<PhysQubit> cb) {
  Channel ch;
  ch.a = a;
  ch.b = b;
  ch.capacity = ca.size();
  ch.comm_a = std::move(ca);
  ch.comm_b = std::move(cb);
  return ch;
}

// Two QPUs of 5 data + 1 comm qubit, one channel: 12 physical qubits.
inline NetworkConfig two_qpu_line() {
  NetworkConfig net;
  net.qpus.push_back(line_qpu("QPU0", 5, {2}));
  net.qpus.push_back(line_qpu("QPU1", 5, {2}));
  net.channels.push_back(channel(0, 1, {5}, {5}));
  validate(net);
  return net;
}

// Three fully linked QPUs (3+2, 2+2, 2+2): 13 physical qubits.
inline NetworkConfig three_qpu_triangle() {
  NetworkConfig net;
  net.qpus.push_back(line_qpu("QPU0", 3, {0, 2}));
  net.qpus.push_back(line_qpu("QPU1", 2, {0, 1}));
  net.qpus.push_back(line_qpu("QPU2", 2, {0, 1}));
  net.channels.push_back(channel(0, 1, {3}, {2}));
  net.channels.push_back(channel(0, 2, {4}, {2}));
  net.channels.push_back(channel(1, 2, {3}, {3}));
  validate(net);
  return net;
}

inline Assignment assignment(std::vector<QpuIndex> partition, const NetworkConfig& net) {
  return Assignment{std::move(partition), net.capacities()};
}

// Random unitary circuit over the program gate set with depth <= max_depth.
inline Circuit random_circuit(std::size_t n, std::size_t gate_count, std::size_t max_depth, std::mt19937_64& rng) {
  constexpr GateKind kinds[] = {GateKind::h,  GateKind::x,  GateKind::z,  GateKind::s,  GateKind::t,   GateKind::rz,
                                GateKind::ry, GateKind::cx, GateKind::cz, GateKind::cp, GateKind::swap};
  std::uniform_int_distribution<std::size_t> pick_kind(0, std::size(kinds) - 1);
  std::uniform_int_distribution<Qubit> pick_qubit(0, static_cast<Qubit>(n - 1));
  std::uniform_real_distribution<double> pick_angle(-3.0, 3.0);
  for (;;) {
    Circuit c(n);
    for (std::size_t i = 0; i < gate_count; ++i) {
      const auto k = kinds[pick_kind(rng)];
      if (arity(k) == 1) {
        c.add(gates::single(k, pick_qubit(rng), has_angle(k) ? pick_angle(rng) : 0.0));
        continue;
      }
      const auto a = pick_qubit(rng);
      auto b = pick_qubit(rng);
      while (b == a) {
        b = pick_qubit(rng);
      }
      c.add(gates::pair(k, a, b, has_angle(k) ? pick_angle(rng) : 0.0));
    }
    if (compute_layering(c).depth() <= max_depth) {
      return c;
    }
  }
}

// cx(0,1) then h(0), four times: sharing q0 is locked by every h.
inline Circuit retargeted_control() {
  Circuit c(2);
  for (int i = 0; i < 4; ++i) {
    c.add(gates::cx(0, 1)).add(gates::h(0));
  }
  return c;
}

inline std::size_t count_origin(const Circuit& c, GateKind k, GateOrigin o) {
  std::size_t n = 0;
  for (const auto& g : c.gates) {
    n += g.kind == k && g.origin == o ? 1 : 0;
  }
  return n;
}

} // namespace dqcc::fixture

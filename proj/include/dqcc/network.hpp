#pragma once

#include "dqcc/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dqcc {

/// Physical qubit index local to one QPU.
using PhysQubit = std::uint32_t;
using QpuIndex = std::size_t;
using ChannelIndex = std::size_t;

struct CouplingEdge {
  PhysQubit a{0};
  PhysQubit b{0};
  bool directed{false}; // a may control b, not the reverse

  friend bool operator==(const CouplingEdge&, const CouplingEdge&) = default;
};

/// One quantum processor: physical qubits `0 .. data+comm-1` split into data
/// and communication qubits, plus the coupling map.
struct QPUConfig {
  std::string id;
  std::vector<PhysQubit> data_qubits;
  std::vector<PhysQubit> comm_qubits;
  std::vector<CouplingEdge> edges;

  [[nodiscard]] std::size_t num_physical() const noexcept { return data_qubits.size() + comm_qubits.size(); }
  [[nodiscard]] std::size_t capacity() const noexcept { return data_qubits.size(); }

  [[nodiscard]] bool is_comm(PhysQubit p) const {
    return std::find(comm_qubits.begin(), comm_qubits.end(), p) != comm_qubits.end();
  }

  /// Sorted undirected neighbour lists.
  [[nodiscard]] std::vector<std::vector<PhysQubit>> adjacency() const {
    std::vector<std::vector<PhysQubit>> adj(num_physical());
    for (const auto& e : edges) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    for (auto& n : adj) {
      std::sort(n.begin(), n.end());
      n.erase(std::unique(n.begin(), n.end()), n.end());
    }
    return adj;
  }

  friend bool operator==(const QPUConfig&, const QPUConfig&) = default;
};

/// Direct link between two QPUs. Pair `i` is (comm_a[i] on qpu a, comm_b[i] on qpu b).
struct Channel {
  QpuIndex a{0};
  QpuIndex b{0};
  std::size_t capacity{1};
  std::vector<PhysQubit> comm_a;
  std::vector<PhysQubit> comm_b;

  [[nodiscard]] bool joins(QpuIndex x, QpuIndex y) const noexcept {
    return (a == x && b == y) || (a == y && b == x);
  }
  [[nodiscard]] const std::vector<PhysQubit>& comm_at(QpuIndex q) const { return q == a ? comm_a : comm_b; }

  friend bool operator==(const Channel&, const Channel&) = default;
};

struct NetworkConfig {
  std::vector<QPUConfig> qpus;
  std::vector<Channel> channels;
  std::int64_t epr_gen_interval{1};
  double mean_decoherence_time{100.0};

  [[nodiscard]] std::size_t total_data_capacity() const noexcept {
    return std::accumulate(qpus.begin(), qpus.end(), std::size_t{0},
                           [](std::size_t s, const QPUConfig& q) { return s + q.capacity(); });
  }

  [[nodiscard]] std::vector<std::size_t> capacities() const {
    std::vector<std::size_t> out;
    for (const auto& q : qpus) {
      out.push_back(q.capacity());
    }
    return out;
  }

  /// Index of the channel joining x and y, or nullopt-like `channels.size()`.
  [[nodiscard]] ChannelIndex channel_between(QpuIndex x, QpuIndex y) const noexcept {
    for (ChannelIndex i = 0; i < channels.size(); ++i) {
      if (channels[i].joins(x, y)) {
        return i;
      }
    }
    return channels.size();
  }
  [[nodiscard]] bool linked(QpuIndex x, QpuIndex y) const noexcept { return channel_between(x, y) < channels.size(); }

  [[nodiscard]] QpuIndex qpu_index(const std::string& id) const {
    for (QpuIndex i = 0; i < qpus.size(); ++i) {
      if (qpus[i].id == id) {
        return i;
      }
    }
    throw validation_error("unknown QPU '" + id + "'");
  }

  /// Offset of each QPU's qubits in the flat physical index space.
  [[nodiscard]] std::vector<std::size_t> offsets() const {
    std::vector<std::size_t> out;
    std::size_t off = 0;
    for (const auto& q : qpus) {
      out.push_back(off);
      off += q.num_physical();
    }
    return out;
  }
  [[nodiscard]] std::size_t total_physical() const noexcept {
    std::size_t n = 0;
    for (const auto& q : qpus) {
      n += q.num_physical();
    }
    return n;
  }

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

namespace detail {

inline bool connected(std::size_t n, const std::vector<std::vector<PhysQubit>>& adj) {
  if (n == 0) {
    return true;
  }
  std::vector<char> seen(n, 0);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!todo.empty()) {
    const auto v = todo.front();
    todo.pop();
    for (auto w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        todo.push(w);
      }
    }
  }
  return count == n;
}

} // namespace detail

inline void validate(const QPUConfig& q) {
  const auto n = q.num_physical();
  const auto where = "QPU '" + q.id + "': ";
  if (q.id.empty()) {
    throw validation_error("QPU without id");
  }
  if (q.data_qubits.empty()) {
    throw validation_error(where + "no data qubits");
  }
  std::set<PhysQubit> all;
  for (auto p : q.data_qubits) {
    all.insert(p);
  }
  for (auto p : q.comm_qubits) {
    if (all.count(p) != 0) {
      throw validation_error(where + "qubit " + std::to_string(p) + " is both data and communication qubit");
    }
    all.insert(p);
  }
  if (all.size() != n || *all.rbegin() != n - 1) {
    throw validation_error(where + "physical qubits must be numbered 0.." + std::to_string(n - 1) +
                           " without repeats");
  }
  for (const auto& e : q.edges) {
    if (e.a >= n || e.b >= n || e.a == e.b) {
      throw validation_error(where + "bad coupling edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")");
    }
  }
  const auto adj = q.adjacency();
  if (!detail::connected(n, adj)) {
    throw validation_error(where + "coupling map is not connected");
  }
  for (auto c : q.comm_qubits) {
    const bool touches_rest = std::any_of(adj[c].begin(), adj[c].end(), [&](PhysQubit w) { return !q.is_comm(w); });
    if (!touches_rest) {
      throw validation_error(where + "communication qubit " + std::to_string(c) + " has no edge to a data qubit");
    }
  }
}

/// Checks every network invariant; the message names the violated one.
inline void validate(const NetworkConfig& net) {
  if (net.qpus.empty()) {
    throw validation_error("network has no QPUs");
  }
  std::set<std::string> ids;
  for (const auto& q : net.qpus) {
    validate(q);
    if (!ids.insert(q.id).second) {
      throw validation_error("duplicate QPU id '" + q.id + "'");
    }
  }
  if (net.epr_gen_interval < 1) {
    throw validation_error("epr_gen_interval must be >= 1");
  }
  if (!(net.mean_decoherence_time > 0.0)) {
    throw validation_error("mean_decoherence_time must be > 0");
  }
  std::map<std::pair<QpuIndex, PhysQubit>, ChannelIndex> owner;
  std::vector<std::vector<PhysQubit>> qpu_adj(net.qpus.size());
  for (ChannelIndex i = 0; i < net.channels.size(); ++i) {
    const auto& ch = net.channels[i];
    const auto name = "channel " + std::to_string(i) + ": ";
    if (ch.a >= net.qpus.size() || ch.b >= net.qpus.size()) {
      throw validation_error(name + "unknown endpoint");
    }
    if (ch.a == ch.b) {
      throw validation_error(name + "endpoints must differ");
    }
    if (ch.capacity < 1) {
      throw validation_error(name + "capacity must be >= 1");
    }
    if (ch.comm_a.size() != ch.capacity || ch.comm_b.size() != ch.capacity) {
      throw validation_error(name + "needs exactly `capacity` communication qubits at each endpoint");
    }
    for (auto [qpu, list] : {std::pair{ch.a, &ch.comm_a}, std::pair{ch.b, &ch.comm_b}}) {
      for (auto p : *list) {
        if (!net.qpus[qpu].is_comm(p)) {
          throw validation_error(name + "qubit " + std::to_string(p) + " is not a communication qubit of '" +
                                 net.qpus[qpu].id + "'");
        }
        if (!owner.emplace(std::pair{qpu, p}, i).second) {
          throw validation_error(name + "communication qubit " + std::to_string(p) + " of '" + net.qpus[qpu].id +
                                 "' is shared by two channels");
        }
      }
    }
    for (ChannelIndex j = 0; j < i; ++j) {
      if (net.channels[j].joins(ch.a, ch.b)) {
        throw validation_error(name + "duplicate channel between the same QPUs");
      }
    }
    qpu_adj[ch.a].push_back(static_cast<PhysQubit>(ch.b));
    qpu_adj[ch.b].push_back(static_cast<PhysQubit>(ch.a));
  }
  if (!detail::connected(net.qpus.size(), qpu_adj)) {
    throw validation_error("network graph is not connected");
  }
}

} // namespace dqcc

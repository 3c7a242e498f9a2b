#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/circuit_io.hpp"
#include "dqcc/distributed.hpp"
#include "dqcc/errors.hpp"
#include "dqcc/network.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dqcc {

/// A remote op after routing, with the comm qubits it used and the span of
/// compiled gates (routing swaps included) that implement it.
struct RemoteRecord {
  RemoteOp op;
  std::size_t pair{0};
  PhysQubit local_comm{0};  // at op.source_qpu (global index)
  PhysQubit remote_comm{0}; // at op.target_qpu (global index)
  std::size_t first_gate{0};
  std::size_t last_gate{0}; // one past

  friend bool operator==(const RemoteRecord&, const RemoteRecord&) = default;
};

/// Fully routed circuit over the flat physical register of the network:
/// QPU k owns global qubits [offsets[k], offsets[k] + sizes[k]).
struct CompiledCircuit {
  Circuit circuit;
  std::vector<std::string> qpu_ids;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> sizes;
  std::size_t num_logical{0};
  std::size_t program_cbits{0};
  std::vector<PhysQubit> initial; // logical -> global physical
  std::vector<PhysQubit> final;
  std::vector<RemoteRecord> remote;

  [[nodiscard]] QpuIndex qpu_of(PhysQubit p) const {
    for (QpuIndex k = 0; k < offsets.size(); ++k) {
      if (p >= offsets[k] && p < offsets[k] + sizes[k]) {
        return k;
      }
    }
    throw invalid_argument_error("physical qubit " + std::to_string(p) + " outside the network");
  }

  friend bool operator==(const CompiledCircuit&, const CompiledCircuit&) = default;
};

struct RouterOptions {
  /// Prefer comm pairs close to the data qubit before least-recently-used.
  bool prefer_near_comm{false};
};

/// Shortest path from `a` to `b` by BFS, lowest-index neighbours first.
/// Intermediate vertices must satisfy `allowed`.
template <typename Allowed>
std::vector<PhysQubit> shortest_path(const std::vector<std::vector<PhysQubit>>& adj, PhysQubit a, PhysQubit b,
                                     const Allowed& allowed) {
  constexpr auto none = std::numeric_limits<PhysQubit>::max();
  std::vector<PhysQubit> parent(adj.size(), none);
  std::deque<PhysQubit> queue{a};
  parent[a] = a;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    if (v == b) {
      break;
    }
    if (v != a && !allowed(v)) {
      continue;
    }
    for (auto w : adj[v]) {
      if (parent[w] == none) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (parent[b] == none) {
    throw routing_error("no path from physical qubit " + std::to_string(a) + " to " + std::to_string(b));
  }
  std::vector<PhysQubit> path{b};
  while (path.back() != a) {
    path.push_back(parent[path.back()]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::vector<PhysQubit> shortest_path(const std::vector<std::vector<PhysQubit>>& adj, PhysQubit a, PhysQubit b) {
  return shortest_path(adj, a, b, [](PhysQubit) { return true; });
}

/// SWAP chain moving the state at `a` next to `b`: path length minus two swaps.
template <typename Allowed>
std::vector<std::pair<PhysQubit, PhysQubit>> swap_path(const std::vector<std::vector<PhysQubit>>& adj, PhysQubit a,
                                                       PhysQubit b, const Allowed& allowed) {
  const auto path = shortest_path(adj, a, b, allowed);
  std::vector<std::pair<PhysQubit, PhysQubit>> swaps;
  for (std::size_t i = 0; i + 2 < path.size(); ++i) {
    swaps.emplace_back(path[i], path[i + 1]);
  }
  return swaps;
}

inline std::vector<std::pair<PhysQubit, PhysQubit>> swap_path(const std::vector<std::vector<PhysQubit>>& adj,
                                                              PhysQubit a, PhysQubit b) {
  return swap_path(adj, a, b, [](PhysQubit) { return true; });
}

/// Least recently used pair among those not holding a shared copy; ties go
/// to the lowest pair index. Returns nullopt when every pair is busy.
inline std::optional<std::size_t> select_comm_pair(const std::vector<std::uint64_t>& clocks,
                                                   const std::vector<char>& busy) {
  std::optional<std::size_t> best;
  for (std::size_t p = 0; p < clocks.size(); ++p) {
    if (!busy[p] && (!best || clocks[p] < clocks[*best])) {
      best = p;
    }
  }
  return best;
}

/// The comm qubit of `ch` at `qpu` picked by select_comm_pair.
inline PhysQubit select_comm_qubit(const Channel& ch, QpuIndex qpu, const std::vector<std::uint64_t>& clocks,
                                   const std::vector<char>& busy) {
  if (!ch.joins(qpu, qpu == ch.a ? ch.b : ch.a)) {
    throw invalid_argument_error("select_comm_qubit: channel does not reach the QPU");
  }
  const auto p = select_comm_pair(clocks, busy);
  if (!p) {
    throw routing_error("every communication qubit of the channel holds a shared copy");
  }
  return ch.comm_at(qpu)[*p];
}

namespace detail {

class Router {
public:
  Router(const NetworkConfig& net, RouterOptions opts) : net_(net), opts_(opts) {
    const auto offsets = net.offsets();
    out_.offsets = offsets;
    for (QpuIndex k = 0; k < net.qpus.size(); ++k) {
      const auto& q = net.qpus[k];
      out_.qpu_ids.push_back(q.id);
      out_.sizes.push_back(q.num_physical());
      const auto local = q.adjacency();
      for (PhysQubit p = 0; p < q.num_physical(); ++p) {
        std::vector<PhysQubit> n;
        for (auto w : local[p]) {
          n.push_back(static_cast<PhysQubit>(offsets[k] + w));
        }
        adj_.push_back(std::move(n));
        comm_.push_back(q.is_comm(p) ? 1 : 0);
        qpu_.push_back(k);
      }
    }
    occupant_.assign(adj_.size(), free_slot);
    for (const auto& ch : net.channels) {
      clock_.emplace_back(ch.capacity, 0);
      busy_.emplace_back(ch.capacity, 0);
    }
  }

  CompiledCircuit route(const DistributedCircuit& dc) {
    if (dc.initial.capacities != net_.capacities()) {
      throw invalid_argument_error("route: assignment does not match the network");
    }
    out_.num_logical = dc.num_qubits;
    out_.program_cbits = dc.num_cbits;
    out_.circuit = Circuit(adj_.size(), dc.num_cbits);
    place(dc.initial);
    for (const auto& op : dc.ops) {
      if (op.is_remote) {
        remote(op.remote);
      } else {
        gate(op);
      }
    }
    if (!shares_.empty()) {
      throw routing_error("distributed circuit leaves a shared copy open");
    }
    for (Qubit q = 0; q < dc.num_qubits; ++q) {
      out_.final.push_back(where_[q]);
    }
    return std::move(out_);
  }

private:
  static constexpr std::int64_t free_slot = -1;

  struct Share {
    Qubit qubit;
    QpuIndex at;
    ChannelIndex channel;
    std::size_t pair;
    std::size_t entity;
  };

  /// Data positions of `k` in BFS order from the lowest data qubit.
  [[nodiscard]] std::vector<PhysQubit> data_order(QpuIndex k) const {
    const auto& q = net_.qpus[k];
    const auto base = static_cast<PhysQubit>(out_.offsets[k]);
    const auto start = base + *std::min_element(q.data_qubits.begin(), q.data_qubits.end());
    std::vector<PhysQubit> order;
    std::vector<char> seen(adj_.size(), 0);
    std::deque<PhysQubit> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (auto w : adj_[v]) {
        if (!seen[w] && !comm_[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return order;
  }

  void place(const Assignment& a) {
    where_.assign(a.partition.size(), 0);
    for (QpuIndex k = 0; k < net_.qpus.size(); ++k) {
      const auto order = data_order(k);
      std::size_t next = 0;
      for (Qubit q = 0; q < a.partition.size(); ++q) {
        if (a.partition[q] == k) {
          if (next >= order.size()) {
            throw routing_error("QPU " + net_.qpus[k].id + " has no data qubit left for logical qubit " +
                                std::to_string(q));
          }
          set(q, order[next++]);
        }
      }
    }
    out_.initial = where_;
  }

  void set(std::size_t entity, PhysQubit p) {
    if (entity >= where_.size()) {
      where_.resize(entity + 1, 0);
    }
    where_[entity] = p;
    occupant_[p] = static_cast<std::int64_t>(entity);
  }

  void emit(const Gate& g) { out_.circuit.add(g); }

  void emit_swap(PhysQubit a, PhysQubit b, GateOrigin origin) {
    emit(gates::tagged(gates::swap(a, b), origin));
    const auto oa = occupant_[a];
    const auto ob = occupant_[b];
    occupant_[a] = ob;
    occupant_[b] = oa;
    if (oa != free_slot) {
      where_[static_cast<std::size_t>(oa)] = b;
    }
    if (ob != free_slot) {
      where_[static_cast<std::size_t>(ob)] = a;
    }
  }

  ClassicalBit fresh_bit() { return static_cast<ClassicalBit>(out_.circuit.num_cbits++); }

  /// Moves the state at `from` next to `to` through data qubits.
  void approach(PhysQubit from, PhysQubit to, GateOrigin origin) {
    if (std::find(adj_[from].begin(), adj_[from].end(), to) != adj_[from].end()) {
      return;
    }
    for (const auto& [a, b] : swap_path(adj_, from, to, [&](PhysQubit v) { return !comm_[v]; })) {
      emit_swap(a, b, origin);
    }
  }

  /// Empties comm qubit `c` by shifting its occupant towards the nearest free
  /// data qubit of the same QPU.
  void restore(PhysQubit c) {
    if (occupant_[c] == free_slot) {
      return;
    }
    std::vector<PhysQubit> parent(adj_.size(), c);
    std::vector<char> seen(adj_.size(), 0);
    std::deque<PhysQubit> queue{c};
    seen[c] = 1;
    std::optional<PhysQubit> target;
    while (!queue.empty() && !target) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto w : adj_[v]) {
        if (seen[w] || comm_[w]) {
          continue;
        }
        seen[w] = 1;
        parent[w] = v;
        if (occupant_[w] == free_slot) {
          target = w;
          break;
        }
        queue.push_back(w);
      }
    }
    if (!target) {
      throw routing_error("cannot restore communication qubit " + std::to_string(c) +
                          ": no free data qubit on QPU " + net_.qpus[qpu_[c]].id);
    }
    std::vector<PhysQubit> path{*target};
    while (path.back() != c) {
      path.push_back(parent[path.back()]);
    }
    // path runs target .. c; pull the free slot back towards c
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      emit_swap(path[i + 1], path[i], GateOrigin::remote);
    }
  }

  [[nodiscard]] std::size_t pick_pair(ChannelIndex ch, QpuIndex side, PhysQubit data) const {
    if (!opts_.prefer_near_comm) {
      const auto p = select_comm_pair(clock_[ch], busy_[ch]);
      if (!p) {
        throw routing_error("channel " + std::to_string(ch) + " has no free communication pair");
      }
      return *p;
    }
    const auto& comms = net_.channels[ch].comm_at(side);
    std::optional<std::size_t> best;
    std::size_t best_dist = 0;
    for (std::size_t p = 0; p < comms.size(); ++p) {
      if (busy_[ch][p]) {
        continue;
      }
      const auto d = shortest_path(adj_, data, static_cast<PhysQubit>(out_.offsets[side] + comms[p])).size();
      if (!best || d < best_dist || (d == best_dist && clock_[ch][p] < clock_[ch][*best])) {
        best = p;
        best_dist = d;
      }
    }
    if (!best) {
      throw routing_error("channel " + std::to_string(ch) + " has no free communication pair");
    }
    return *best;
  }

  void remote(const RemoteOp& op) {
    RemoteRecord rec;
    rec.op = op;
    rec.first_gate = out_.circuit.gates.size();
    if (op.kind == RemoteKind::catdisent) {
      catdisent(op, rec);
    } else {
      const auto& ch = net_.channels.at(op.channel);
      if (!ch.joins(op.source_qpu, op.target_qpu)) {
        throw routing_error("remote op on channel " + std::to_string(op.channel) + " between unjoined QPUs");
      }
      const auto data = where_.at(op.qubit);
      if (qpu_[data] != op.source_qpu) {
        throw routing_error("logical qubit " + std::to_string(op.qubit) + " is not on QPU " +
                            net_.qpus[op.source_qpu].id);
      }
      const auto p = pick_pair(op.channel, op.source_qpu, data);
      const auto ra = static_cast<PhysQubit>(out_.offsets[op.source_qpu] + ch.comm_at(op.source_qpu)[p]);
      const auto rb = static_cast<PhysQubit>(out_.offsets[op.target_qpu] + ch.comm_at(op.target_qpu)[p]);
      restore(ra);
      restore(rb);
      approach(where_[op.qubit], ra, GateOrigin::remote);
      clock_[op.channel][p] = ++tick_;
      rec.pair = p;
      rec.local_comm = ra;
      rec.remote_comm = rb;
      const auto q = where_[op.qubit];
      const auto tag = [](Gate g) { return gates::tagged(g, GateOrigin::remote); };
      emit(tag(gates::epr(ra, rb)));
      emit(tag(gates::cx(q, ra)));
      if (op.kind == RemoteKind::teledata) {
        const auto m1 = fresh_bit();
        const auto m2 = fresh_bit();
        emit(tag(gates::h(q)));
        emit(tag(gates::measure(q, m1)));
        emit(tag(gates::measure(ra, m2)));
        emit(tag(gates::conditioned(gates::x(rb), m2)));
        emit(tag(gates::conditioned(gates::z(rb), m1)));
        occupant_[q] = free_slot;
        set(op.qubit, rb);
      } else {
        const auto m = fresh_bit();
        emit(tag(gates::measure(ra, m)));
        emit(tag(gates::conditioned(gates::x(rb), m)));
        const auto entity = where_.size();
        set(entity, rb);
        busy_[op.channel][p] = 1;
        shares_.push_back({op.qubit, op.target_qpu, op.channel, p, entity});
      }
    }
    rec.last_gate = out_.circuit.gates.size();
    out_.remote.push_back(rec);
  }

  void catdisent(const RemoteOp& op, RemoteRecord& rec) {
    const auto it = std::find_if(shares_.begin(), shares_.end(), [&](const Share& s) {
      return s.qubit == op.qubit && s.at == op.target_qpu && s.channel == op.channel;
    });
    if (it == shares_.end()) {
      throw routing_error("catdisent of logical qubit " + std::to_string(op.qubit) + " without an open share");
    }
    const auto& ch = net_.channels[op.channel];
    rec.pair = it->pair;
    rec.local_comm = static_cast<PhysQubit>(out_.offsets[op.source_qpu] + ch.comm_at(op.source_qpu)[it->pair]);
    rec.remote_comm = static_cast<PhysQubit>(out_.offsets[op.target_qpu] + ch.comm_at(op.target_qpu)[it->pair]);
    const auto copy = where_[it->entity];
    const auto m = fresh_bit();
    const auto tag = [](Gate g) { return gates::tagged(g, GateOrigin::remote); };
    emit(tag(gates::h(copy)));
    emit(tag(gates::measure(copy, m)));
    emit(tag(gates::conditioned(gates::z(where_[op.qubit]), m)));
    occupant_[copy] = free_slot;
    busy_[op.channel][it->pair] = 0;
    shares_.erase(it);
  }

  /// Entity standing for logical `q` on QPU `at`: the qubit itself or its copy.
  [[nodiscard]] std::pair<std::size_t, bool> operand(Qubit q, QpuIndex at) const {
    if (qpu_[where_.at(q)] == at) {
      return {q, false};
    }
    for (const auto& s : shares_) {
      if (s.qubit == q && s.at == at) {
        return {s.entity, true};
      }
    }
    throw routing_error("logical qubit " + std::to_string(q) + " is neither on nor shared with QPU " +
                        net_.qpus[at].id);
  }

  void gate(const DistributedOp& op) {
    auto g = op.gate;
    if (!g.two_qubit()) {
      const auto [e, is_copy] = operand(g.qubits[0], op.qpu);
      if (is_copy) {
        throw routing_error("single-qubit gate on a shared copy of logical qubit " + std::to_string(g.qubits[0]));
      }
      g.qubits = {where_[e], where_[e]};
      emit(g);
      return;
    }
    auto [e0, c0] = operand(g.qubits[0], op.qpu);
    auto [e1, c1] = operand(g.qubits[1], op.qpu);
    if ((c0 && !control_role(g.kind, 0)) || (c1 && !control_role(g.kind, 1))) {
      throw routing_error("gate acts on a shared copy outside a control role");
    }
    // the data side moves towards a copy or a state parked on a comm qubit
    const bool pinned0 = c0 || comm_[where_[e0]];
    const bool pinned1 = c1 || comm_[where_[e1]];
    const auto origin = c0 || c1 ? GateOrigin::remote : GateOrigin::routing;
    if (pinned0 && !pinned1) {
      approach(where_[e1], where_[e0], origin);
    } else if (pinned1 && !pinned0) {
      approach(where_[e0], where_[e1], origin);
    } else if (c0 && !c1) {
      approach(where_[e1], where_[e0], origin);
    } else {
      approach(where_[e0], where_[e1], origin);
    }
    g.qubits[0] = where_[e0];
    g.qubits[1] = where_[e1];
    emit(g);
  }

  const NetworkConfig& net_;
  RouterOptions opts_;
  std::vector<std::vector<PhysQubit>> adj_;
  std::vector<char> comm_;
  std::vector<QpuIndex> qpu_;
  std::vector<std::int64_t> occupant_;
  std::vector<PhysQubit> where_; // logical qubits first, then shared copies
  std::vector<Share> shares_;
  std::vector<std::vector<std::uint64_t>> clock_;
  std::vector<std::vector<char>> busy_;
  std::uint64_t tick_{0};
  CompiledCircuit out_;
};

} // namespace detail

/// Maps a distributed circuit onto physical qubits: inserts SWAP chains for
/// local gates, routes data qubits next to the chosen comm qubits, restores
/// occupied comm qubits before reuse and expands every remote op.
inline CompiledCircuit route(const DistributedCircuit& dc, const NetworkConfig& net, const RouterOptions& opts = {}) {
  detail::Router r(net, opts);
  return r.route(dc);
}

} // namespace dqcc

#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/errors.hpp"
#include "dqcc/network.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace dqcc {

using Weight = std::int64_t;

/// Undirected weighted graph over the logical qubits of a circuit.
struct InteractionGraph {
  std::size_t num_vertices{0};
  std::map<std::pair<Qubit, Qubit>, Weight> weights; // key (u, v) with u < v

  [[nodiscard]] Weight weight(Qubit u, Qubit v) const {
    if (u > v) {
      std::swap(u, v);
    }
    const auto it = weights.find({u, v});
    return it == weights.end() ? 0 : it->second;
  }

  void add(Qubit u, Qubit v, Weight w = 1) {
    if (u == v) {
      throw invalid_argument_error("interaction graph: self loop");
    }
    if (u > v) {
      std::swap(u, v);
    }
    weights[{u, v}] += w;
  }

  [[nodiscard]] Weight total_weight() const {
    Weight s = 0;
    for (const auto& [e, w] : weights) {
      s += w;
    }
    return s;
  }

  /// Neighbour lists (vertex, weight), ascending by vertex.
  [[nodiscard]] std::vector<std::vector<std::pair<Qubit, Weight>>> adjacency() const {
    std::vector<std::vector<std::pair<Qubit, Weight>>> adj(num_vertices);
    for (const auto& [e, w] : weights) {
      adj[e.first].emplace_back(e.second, w);
      adj[e.second].emplace_back(e.first, w);
    }
    for (auto& a : adj) {
      std::sort(a.begin(), a.end());
    }
    return adj;
  }
};

inline InteractionGraph build_interaction_graph(const Circuit& c) {
  InteractionGraph g;
  g.num_vertices = c.num_qubits;
  for (const auto& gate : c.gates) {
    if (gate.two_qubit()) {
      g.add(gate.qubits[0], gate.qubits[1]);
    }
  }
  return g;
}

inline constexpr QpuIndex unassigned = std::numeric_limits<QpuIndex>::max();

/// Logical qubit -> QPU map together with the per-QPU data capacities.
struct Assignment {
  std::vector<QpuIndex> partition;
  std::vector<std::size_t> capacities;

  [[nodiscard]] std::vector<std::size_t> loads() const {
    std::vector<std::size_t> out(capacities.size(), 0);
    for (auto p : partition) {
      if (p != unassigned && p < out.size()) {
        ++out[p];
      }
    }
    return out;
  }

  [[nodiscard]] bool feasible() const {
    const auto l = loads();
    for (std::size_t p = 0; p < capacities.size(); ++p) {
      if (l[p] > capacities[p]) {
        return false;
      }
    }
    return std::none_of(partition.begin(), partition.end(),
                        [&](QpuIndex p) { return p == unassigned || p >= capacities.size(); });
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Sum of the weights of edges whose endpoints sit on different QPUs.
inline Weight cut_cost(const Assignment& a, const InteractionGraph& g) {
  if (a.partition.size() != g.num_vertices) {
    throw invalid_argument_error("cut_cost: assignment covers " + std::to_string(a.partition.size()) + " of " +
                                 std::to_string(g.num_vertices) + " vertices");
  }
  for (std::size_t v = 0; v < a.partition.size(); ++v) {
    if (a.partition[v] == unassigned) {
      throw invalid_argument_error("cut_cost: vertex " + std::to_string(v) + " is unassigned");
    }
  }
  Weight cut = 0;
  for (const auto& [e, w] : g.weights) {
    if (a.partition[e.first] != a.partition[e.second]) {
      cut += w;
    }
  }
  return cut;
}

/// Greedy single-qubit move refinement: repeatedly applies the feasible move
/// with the largest strict cut reduction; each qubit moves at most once.
/// Ties go to the lowest qubit, then the lowest target QPU.
inline Assignment refine_assignment(Assignment a, const InteractionGraph& g) {
  const auto adj = g.adjacency();
  const auto k = a.capacities.size();
  auto load = a.loads();
  std::vector<char> moved(g.num_vertices, 0);
  std::vector<Weight> to_part(k, 0);
  for (;;) {
    Weight best_gain = 0;
    std::size_t best_v = g.num_vertices;
    QpuIndex best_p = k;
    for (std::size_t v = 0; v < g.num_vertices; ++v) {
      if (moved[v]) {
        continue;
      }
      std::fill(to_part.begin(), to_part.end(), 0);
      for (const auto& [u, w] : adj[v]) {
        to_part[a.partition[u]] += w;
      }
      const auto home = a.partition[v];
      for (QpuIndex p = 0; p < k; ++p) {
        if (p == home || load[p] >= a.capacities[p]) {
          continue;
        }
        const Weight gain = to_part[p] - to_part[home];
        if (gain > best_gain) {
          best_gain = gain;
          best_v = v;
          best_p = p;
        }
      }
    }
    if (best_v == g.num_vertices) {
      break;
    }
    --load[a.partition[best_v]];
    ++load[best_p];
    a.partition[best_v] = best_p;
    moved[best_v] = 1;
  }
  return a;
}

struct PartitionOptions {
  std::uint64_t seed{1};
  std::size_t restarts{8};
  std::size_t max_passes{16};
};

namespace detail {

/// Weighted graph used inside the multilevel scheme.
struct Level {
  std::vector<Weight> vweight;
  std::vector<std::vector<std::pair<std::size_t, Weight>>> adj;
  std::vector<std::size_t> coarse_of; // map to the next coarser level
};

inline Level level_from(const InteractionGraph& g) {
  Level l;
  l.vweight.assign(g.num_vertices, 1);
  l.adj.resize(g.num_vertices);
  const auto a = g.adjacency();
  for (std::size_t v = 0; v < g.num_vertices; ++v) {
    for (const auto& [u, w] : a[v]) {
      l.adj[v].emplace_back(u, w);
    }
  }
  return l;
}

/// Heavy-edge matching in a seeded random visiting order. Merged vertex
/// weight stays within `max_vweight`.
inline Level coarsen(Level& fine, std::mt19937_64& rng, Weight max_vweight) {
  const auto n = fine.vweight.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  std::vector<std::size_t> match(n, n);
  for (auto v : order) {
    if (match[v] != n) {
      continue;
    }
    std::size_t best = v;
    Weight best_w = 0;
    for (const auto& [u, w] : fine.adj[v]) {
      if (match[u] == n && u != v && fine.vweight[u] + fine.vweight[v] <= max_vweight && w > best_w) {
        best = u;
        best_w = w;
      }
    }
    match[v] = best;
    match[best] = v;
  }
  fine.coarse_of.assign(n, n);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (fine.coarse_of[v] == n) {
      fine.coarse_of[v] = next;
      fine.coarse_of[match[v]] = next;
      ++next;
    }
  }
  Level coarse;
  coarse.vweight.assign(next, 0);
  coarse.adj.resize(next);
  std::vector<std::map<std::size_t, Weight>> acc(next);
  for (std::size_t v = 0; v < n; ++v) {
    const auto cv = fine.coarse_of[v];
    coarse.vweight[cv] += fine.vweight[v];
    for (const auto& [u, w] : fine.adj[v]) {
      const auto cu = fine.coarse_of[u];
      if (cu != cv) {
        acc[cv][cu] += w;
      }
    }
  }
  for (std::size_t v = 0; v < next; ++v) {
    for (const auto& [u, w] : acc[v]) {
      coarse.adj[v].emplace_back(u, w);
    }
  }
  return coarse;
}

inline Weight level_cut(const Level& l, const std::vector<QpuIndex>& part) {
  Weight cut = 0;
  for (std::size_t v = 0; v < l.adj.size(); ++v) {
    for (const auto& [u, w] : l.adj[v]) {
      if (u > v && part[u] != part[v]) {
        cut += w;
      }
    }
  }
  return cut;
}

/// Greedy k-way placement: heaviest vertices first, each into the feasible
/// part it is most connected to; ties toward the emptiest part relative to its
/// proportional target. Returns false if some vertex does not fit.
inline bool initial_placement(const Level& l, const std::vector<std::size_t>& caps, std::mt19937_64& rng,
                              std::vector<QpuIndex>& part) {
  const auto n = l.vweight.size();
  const auto k = caps.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return l.vweight[a] > l.vweight[b]; });
  const auto total_cap = std::accumulate(caps.begin(), caps.end(), std::size_t{0});
  Weight total_w = std::accumulate(l.vweight.begin(), l.vweight.end(), Weight{0});
  std::vector<Weight> load(k, 0);
  part.assign(n, unassigned);
  std::vector<Weight> conn(k, 0);
  for (auto v : order) {
    std::fill(conn.begin(), conn.end(), 0);
    for (const auto& [u, w] : l.adj[v]) {
      if (part[u] != unassigned) {
        conn[part[u]] += w;
      }
    }
    QpuIndex best = k;
    double best_fill = 0.0;
    for (QpuIndex p = 0; p < k; ++p) {
      if (load[p] + l.vweight[v] > static_cast<Weight>(caps[p])) {
        continue;
      }
      const double target = static_cast<double>(total_w) * static_cast<double>(caps[p]) / static_cast<double>(total_cap);
      const double fill = static_cast<double>(load[p]) / std::max(target, 1.0);
      if (best == k || conn[p] > conn[best] || (conn[p] == conn[best] && fill < best_fill)) {
        best = p;
        best_fill = fill;
      }
    }
    if (best == k) {
      return false;
    }
    part[v] = best;
    load[best] += l.vweight[v];
  }
  return true;
}

/// Boundary refinement: positive-gain single moves, then positive-gain pair
/// swaps (needed when parts are full), until a pass makes no progress.
inline void refine_level(const Level& l, const std::vector<std::size_t>& caps, std::vector<QpuIndex>& part,
                         std::size_t max_passes) {
  const auto n = l.vweight.size();
  const auto k = caps.size();
  std::vector<Weight> load(k, 0);
  for (std::size_t v = 0; v < n; ++v) {
    load[part[v]] += l.vweight[v];
  }
  std::vector<std::vector<Weight>> conn(n, std::vector<Weight>(k, 0));
  const auto recompute = [&] {
    for (std::size_t v = 0; v < n; ++v) {
      std::fill(conn[v].begin(), conn[v].end(), 0);
      for (const auto& [u, w] : l.adj[v]) {
        conn[v][part[u]] += w;
      }
    }
  };
  const auto weight_between = [&](std::size_t a, std::size_t b) {
    for (const auto& [u, w] : l.adj[a]) {
      if (u == b) {
        return w;
      }
    }
    return Weight{0};
  };
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool improved = false;
    recompute();
    for (std::size_t v = 0; v < n; ++v) {
      const auto home = part[v];
      QpuIndex best = home;
      Weight best_gain = 0;
      for (QpuIndex p = 0; p < k; ++p) {
        if (p == home || load[p] + l.vweight[v] > static_cast<Weight>(caps[p])) {
          continue;
        }
        const Weight gain = conn[v][p] - conn[v][home];
        if (gain > best_gain) {
          best_gain = gain;
          best = p;
        }
      }
      if (best != home) {
        load[home] -= l.vweight[v];
        load[best] += l.vweight[v];
        part[v] = best;
        for (const auto& [u, w] : l.adj[v]) {
          conn[u][home] -= w;
          conn[u][best] += w;
        }
        improved = true;
      }
    }
    // pair swaps between boundary vertices
    std::vector<std::size_t> boundary;
    for (std::size_t v = 0; v < n; ++v) {
      if (conn[v][part[v]] < std::accumulate(conn[v].begin(), conn[v].end(), Weight{0})) {
        boundary.push_back(v);
      }
    }
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      for (std::size_t j = i + 1; j < boundary.size(); ++j) {
        const auto a = boundary[i];
        const auto b = boundary[j];
        const auto pa = part[a];
        const auto pb = part[b];
        if (pa == pb) {
          continue;
        }
        if (load[pa] - l.vweight[a] + l.vweight[b] > static_cast<Weight>(caps[pa]) ||
            load[pb] - l.vweight[b] + l.vweight[a] > static_cast<Weight>(caps[pb])) {
          continue;
        }
        const Weight wab = weight_between(a, b);
        const Weight gain = (conn[a][pb] - conn[a][pa]) + (conn[b][pa] - conn[b][pb]) - 2 * wab;
        if (gain > 0) {
          load[pa] += l.vweight[b] - l.vweight[a];
          load[pb] += l.vweight[a] - l.vweight[b];
          part[a] = pb;
          part[b] = pa;
          for (const auto& [u, w] : l.adj[a]) {
            conn[u][pa] -= w;
            conn[u][pb] += w;
          }
          for (const auto& [u, w] : l.adj[b]) {
            conn[u][pb] -= w;
            conn[u][pa] += w;
          }
          improved = true;
        }
      }
    }
    if (!improved) {
      break;
    }
  }
}

} // namespace detail

/// Capacity-respecting multilevel k-way partition minimizing the cut:
/// heavy-edge coarsening down to at most 4k vertices, greedy initial
/// placement, boundary refinement while projecting back. Several seeded
/// restarts; the lowest cut wins.
inline Assignment kway_partition(const InteractionGraph& g, const std::vector<std::size_t>& capacities,
                                 const PartitionOptions& opts = {}) {
  const auto k = capacities.size();
  if (k == 0) {
    throw capacity_error("kway_partition: no QPUs");
  }
  const auto total = std::accumulate(capacities.begin(), capacities.end(), std::size_t{0});
  if (total < g.num_vertices) {
    throw capacity_error("kway_partition: " + std::to_string(g.num_vertices) + " qubits exceed total capacity " +
                         std::to_string(total));
  }
  Assignment best;
  best.capacities = capacities;
  Weight best_cut = std::numeric_limits<Weight>::max();
  std::mt19937_64 rng(opts.seed);
  const auto max_cap = *std::max_element(capacities.begin(), capacities.end());
  const auto min_cap = *std::min_element(capacities.begin(), capacities.end());
  // coarse vertices must stay placeable next to other coarse vertices
  const Weight max_vweight = std::max<Weight>(1, static_cast<Weight>(k == 1 ? max_cap : std::max<std::size_t>(1, min_cap / 2)));

  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, opts.restarts); ++attempt) {
    std::vector<detail::Level> levels;
    levels.push_back(detail::level_from(g));
    while (levels.back().vweight.size() > 4 * k) {
      auto next = detail::coarsen(levels.back(), rng, max_vweight);
      if (next.vweight.size() * 10 > levels.back().vweight.size() * 9) {
        levels.back().coarse_of.clear();
        break; // matching stalled
      }
      levels.push_back(std::move(next));
    }
    // start at the coarsest level that admits a greedy placement
    std::vector<QpuIndex> part;
    std::size_t lvl = levels.size() - 1;
    while (!detail::initial_placement(levels[lvl], capacities, rng, part)) {
      if (lvl == 0) {
        throw capacity_error("kway_partition: no feasible placement");
      }
      --lvl;
    }
    detail::refine_level(levels[lvl], capacities, part, opts.max_passes);
    while (lvl > 0) {
      --lvl;
      std::vector<QpuIndex> finer(levels[lvl].vweight.size());
      for (std::size_t v = 0; v < finer.size(); ++v) {
        finer[v] = part[levels[lvl].coarse_of[v]];
      }
      part = std::move(finer);
      detail::refine_level(levels[lvl], capacities, part, opts.max_passes);
    }
    const auto cut = detail::level_cut(levels[0], part);
    if (cut < best_cut) {
      best_cut = cut;
      best.partition = part;
    }
  }
  return best;
}

/// Partition followed by the single-move refinement.
inline Assignment assign_qubits(const Circuit& c, const std::vector<std::size_t>& capacities,
                                const PartitionOptions& opts = {}) {
  const auto g = build_interaction_graph(c);
  return refine_assignment(kway_partition(g, capacities, opts), g);
}

} // namespace dqcc

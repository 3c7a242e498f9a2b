#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/circuit_io.hpp"
#include "dqcc/distributed.hpp"
#include "dqcc/errors.hpp"
#include "dqcc/network.hpp"
#include "dqcc/partition.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace dqcc {

struct ScheduleOptions {
  std::size_t window{10};
  Strategy strategy{Strategy::mixed};
};

/// TeleGate covers that rewrite the gate into CX/CZ steps first.
enum class Lowering : std::uint8_t {
  none,
  swap_cx,    // SWAP = CX(u,v) CX(v,u) CX(u,v), each with a shared control
  cx_via_cz,  // CX(u,v) = H(v) CZ(u,v) H(v), both shared with a third QPU
  swap_via_cz // SWAP as three CX, each lowered as cx_via_cz
};

/// The gate sequences a lowering emits in place of `g`.
inline std::vector<Gate> lowered_gates(const Gate& g, Lowering l) {
  const auto u = g.qubits[0];
  const auto v = g.qubits[1];
  const auto via_cz = [](Qubit c, Qubit t) {
    return std::vector<Gate>{gates::h(t), gates::cz(c, t), gates::h(t)};
  };
  switch (l) {
  case Lowering::none: return {g};
  case Lowering::swap_cx: return {gates::cx(u, v), gates::cx(v, u), gates::cx(u, v)};
  case Lowering::cx_via_cz: return via_cz(u, v);
  case Lowering::swap_via_cz: {
    std::vector<Gate> out;
    for (const auto& [c, t] : {std::pair{u, v}, std::pair{v, u}, std::pair{u, v}}) {
      const auto part = via_cz(c, t);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  }
  return {g};
}

/// A way to cover one remote gate: teleport (TeleData) or share (TeleGate)
/// one or two qubits.
struct Candidate {
  bool teledata{false};
  std::vector<std::pair<Qubit, QpuIndex>> moves; // qubit -> destination (TeleData) or share target (TeleGate)
  Lowering lowering{Lowering::none};
  QpuIndex via{0}; // third QPU of the *_via_cz lowerings
  std::size_t n_epr{0};
  std::size_t n_cov{0};
  std::int64_t delay{0};
  std::vector<std::size_t> covered;
};

/// Cover cost (n_epr / n_cov) * ((delay + epr_gen_interval) / d_t), kept as
/// an exact fraction so that candidate comparisons never depend on d_t.
struct CoverCost {
  std::int64_t numerator{0}; // n_epr * (delay + interval)
  std::int64_t covered{1};
  double decoherence{1.0};

  [[nodiscard]] double value() const noexcept {
    return static_cast<double>(numerator) / (static_cast<double>(covered) * decoherence);
  }

  /// Orders costs that share the same decoherence time.
  friend bool operator<(const CoverCost& a, const CoverCost& b) noexcept {
    return a.numerator * b.covered < b.numerator * a.covered;
  }
};

inline CoverCost candidate_cost(const Candidate& c, std::int64_t epr_gen_interval, double mean_decoherence_time) {
  if (c.n_cov == 0) {
    throw invalid_argument_error("candidate_cost: candidate covers no gate");
  }
  if (!(mean_decoherence_time > 0.0)) {
    throw invalid_argument_error("candidate_cost: decoherence time must be positive");
  }
  return {static_cast<std::int64_t>(c.n_epr) * (c.delay + epr_gen_interval), static_cast<std::int64_t>(c.n_cov),
          mean_decoherence_time};
}

struct OpenShare {
  Qubit qubit{0};
  QpuIndex at{0};
  ChannelIndex channel{0};
  std::size_t pair{0};
  std::size_t serial{0};
};

/// Everything the scheduler mutates. Copyable so that a window can be
/// compiled under both strategies from the same starting point.
struct SchedulerState {
  std::vector<QpuIndex> home;
  std::vector<std::size_t> capacity;
  std::vector<std::size_t> free;
  std::vector<OpenShare> shares;
  std::vector<std::vector<std::int64_t>> clock; // [channel][pair] time of last use
  std::vector<std::vector<char>> busy;          // [channel][pair] holds an open share
  std::vector<std::int64_t> ready;              // per logical qubit, next free time step
  std::size_t epr{0};
  std::size_t serial{0};

  SchedulerState() = default;
  SchedulerState(const Assignment& a, const NetworkConfig& net, std::size_t num_qubits)
      : home(a.partition), capacity(a.capacities), free(a.capacities), ready(num_qubits, 0) {
    for (auto p : home) {
      --free[p];
    }
    for (const auto& ch : net.channels) {
      clock.emplace_back(ch.capacity, 0);
      busy.emplace_back(ch.capacity, 0);
    }
  }

  [[nodiscard]] bool shared(Qubit q, QpuIndex at) const noexcept {
    return std::any_of(shares.begin(), shares.end(), [&](const OpenShare& s) { return s.qubit == q && s.at == at; });
  }
};

/// Delay before the ops' channels can deliver a fresh pair, summed over ops.
/// `ops` lists (channel) per remote op; `ready_time` is when the gate could run.
inline std::int64_t estimate_delay(const std::vector<ChannelIndex>& ops, const SchedulerState& s,
                                   std::int64_t epr_gen_interval, std::int64_t ready_time) {
  std::int64_t delay = 0;
  for (auto ch : ops) {
    std::optional<std::int64_t> avail;
    for (std::size_t p = 0; p < s.clock[ch].size(); ++p) {
      if (!s.busy[ch][p]) {
        const auto t = s.clock[ch][p] + epr_gen_interval;
        avail = avail ? std::min(*avail, t) : t;
      }
    }
    if (!avail) {
      // every pair holds a share; the oldest one gets closed first
      avail = *std::min_element(s.clock[ch].begin(), s.clock[ch].end()) + epr_gen_interval;
    }
    delay += std::max<std::int64_t>(0, *avail - ready_time);
  }
  return delay;
}

namespace detail {

/// True when running `g` would act on operand `slot` other than as a control,
/// which is forbidden while that qubit has an open share.
inline bool breaks_share(const Gate& g, std::size_t slot) noexcept {
  return !g.two_qubit() || !control_role(g.kind, slot);
}

/// QPU able to execute `g` given homes and open shares, if any.
template <typename SharedFn>
std::optional<QpuIndex> site_of(const Gate& g, const std::vector<QpuIndex>& home, std::size_t num_qpus,
                                const SharedFn& shared) {
  if (!g.two_qubit()) {
    return home[g.qubits[0]];
  }
  const auto u = g.qubits[0];
  const auto v = g.qubits[1];
  const auto a = home[u];
  const auto b = home[v];
  if (a == b) {
    return a;
  }
  if (control_role(g.kind, 0) && shared(u, b)) {
    return b;
  }
  if (control_role(g.kind, 1) && shared(v, a)) {
    return a;
  }
  if (control_role(g.kind, 0) && control_role(g.kind, 1)) {
    for (QpuIndex q = 0; q < num_qpus; ++q) {
      if (shared(u, q) && shared(v, q)) {
        return q;
      }
    }
  }
  return std::nullopt;
}

class SchedulerPass {
public:
  SchedulerPass(const Circuit& c, const NetworkConfig& net, const ScheduleOptions& opts)
      : c_(c), net_(net), opts_(opts) {}

  void run(SchedulerState& s, std::size_t first, std::size_t last, Strategy strategy,
           std::vector<DistributedOp>& out) const {
    for (std::size_t i = first; i < last; ++i) {
      process(s, i, strategy, out);
    }
  }

  void close_all(SchedulerState& s, std::vector<DistributedOp>& out) const {
    while (!s.shares.empty()) {
      close_share(s, 0, out);
    }
  }

  [[nodiscard]] std::optional<QpuIndex> site(const SchedulerState& s, const Gate& g) const {
    return site_of(g, s.home, net_.qpus.size(), [&](Qubit q, QpuIndex at) { return s.shared(q, at); });
  }

  [[nodiscard]] std::vector<Candidate> teledata_candidates(const SchedulerState& s, std::size_t i) const {
    const auto& g = c_.gates[i];
    const auto u = g.qubits[0];
    const auto v = g.qubits[1];
    const auto a = s.home[u];
    const auto b = s.home[v];
    std::vector<Candidate> out;
    const auto consider = [&](std::vector<std::pair<Qubit, QpuIndex>> moves) {
      Candidate cand;
      cand.teledata = true;
      cand.moves = std::move(moves);
      cand.n_epr = cand.moves.size();
      teledata_coverage(s, i, cand);
      if (cand.n_cov > 0) {
        std::vector<ChannelIndex> chans;
        for (const auto& [q, dest] : cand.moves) {
          chans.push_back(net_.channel_between(s.home[q], dest));
        }
        cand.delay = estimate_delay(chans, s, net_.epr_gen_interval, ready_time(s, g));
        out.push_back(std::move(cand));
      }
    };
    if (net_.linked(a, b)) {
      if (s.free[b] >= 1) {
        consider({{u, b}});
      }
      if (s.free[a] >= 1) {
        consider({{v, a}});
      }
    }
    for (QpuIndex m = 0; m < net_.qpus.size(); ++m) {
      if (m != a && m != b && s.free[m] >= 2 && net_.linked(a, m) && net_.linked(b, m)) {
        consider({{u, m}, {v, m}});
      }
    }
    return out;
  }

  [[nodiscard]] std::vector<Candidate> telegate_candidates(const SchedulerState& s, std::size_t i) const {
    const auto& g = c_.gates[i];
    const auto u = g.qubits[0];
    const auto v = g.qubits[1];
    const auto a = s.home[u];
    const auto b = s.home[v];
    std::vector<Candidate> out;
    const auto lowered = [&](Lowering l, QpuIndex via, std::size_t n_epr, std::vector<ChannelIndex> chans) {
      Candidate cand;
      cand.lowering = l;
      cand.via = via;
      cand.n_epr = n_epr;
      cand.n_cov = 1;
      cand.covered = {i};
      cand.delay = estimate_delay(chans, s, net_.epr_gen_interval, ready_time(s, g));
      out.push_back(std::move(cand));
    };
    if (g.kind == GateKind::swap) {
      if (net_.linked(a, b)) {
        lowered(Lowering::swap_cx, b, 3, {net_.channel_between(a, b)});
        return out;
      }
      for (QpuIndex m = 0; m < net_.qpus.size(); ++m) {
        if (m != a && m != b && net_.linked(a, m) && net_.linked(b, m)) {
          lowered(Lowering::swap_via_cz, m, 6, {net_.channel_between(a, m), net_.channel_between(b, m)});
        }
      }
      return out;
    }
    if (g.kind == GateKind::cx && !net_.linked(a, b)) {
      for (QpuIndex m = 0; m < net_.qpus.size(); ++m) {
        if (m != a && m != b && net_.linked(a, m) && net_.linked(b, m)) {
          std::vector<ChannelIndex> chans{net_.channel_between(b, m)};
          if (!s.shared(u, m)) {
            chans.insert(chans.begin(), net_.channel_between(a, m));
          }
          lowered(Lowering::cx_via_cz, m, chans.size(), chans);
        }
      }
      return out;
    }
    const auto consider = [&](std::vector<std::pair<Qubit, QpuIndex>> shares) {
      Candidate cand;
      std::vector<ChannelIndex> chans;
      for (const auto& [q, at] : shares) {
        if (!s.shared(q, at)) {
          cand.moves.emplace_back(q, at);
          chans.push_back(net_.channel_between(s.home[q], at));
        }
      }
      cand.n_epr = cand.moves.size();
      if (cand.n_epr == 0) {
        return;
      }
      telegate_coverage(s, i, cand);
      if (cand.n_cov > 0) {
        cand.delay = estimate_delay(chans, s, net_.epr_gen_interval, ready_time(s, g));
        out.push_back(std::move(cand));
      }
    };
    if (net_.linked(a, b)) {
      if (control_role(g.kind, 0)) {
        consider({{u, b}});
      }
      if (control_role(g.kind, 1)) {
        consider({{v, a}});
      }
    }
    if (control_role(g.kind, 0) && control_role(g.kind, 1)) {
      for (QpuIndex m = 0; m < net_.qpus.size(); ++m) {
        if (m != a && m != b && net_.linked(a, m) && net_.linked(b, m)) {
          consider({{u, m}, {v, m}});
        }
      }
    }
    return out;
  }

  /// Fills n_cov/covered: the run of two-qubit gates on a moved qubit, from
  /// gate `i` on within the lookahead, that the moves make executable. The run
  /// ends at the first such gate that still cannot run.
  void teledata_coverage(const SchedulerState& s, std::size_t i, Candidate& cand) const {
    auto home = s.home;
    for (const auto& [q, dest] : cand.moves) {
      home[q] = dest;
    }
    const auto moved = [&](Qubit q) {
      return std::any_of(cand.moves.begin(), cand.moves.end(), [q](const auto& m) { return m.first == q; });
    };
    const auto shared = [&](Qubit q, QpuIndex at) { return !moved(q) && s.shared(q, at); };
    cand.n_cov = 0;
    cand.covered.clear();
    for (std::size_t j = i; j < horizon(i); ++j) {
      const auto& g = c_.gates[j];
      if (!g.two_qubit() || !(moved(g.qubits[0]) || moved(g.qubits[1]))) {
        continue;
      }
      if (!site_of(g, home, net_.qpus.size(), shared)) {
        break;
      }
      ++cand.n_cov;
      cand.covered.push_back(j);
    }
    if (cand.covered.empty() || cand.covered.front() != i) {
      cand.n_cov = 0;
      cand.covered.clear();
    }
  }

  /// Fills n_cov/covered: gates within the lookahead that become executable
  /// through the new shares, up to the first gate that would act on a newly
  /// shared qubit other than as a control.
  void telegate_coverage(const SchedulerState& s, std::size_t i, Candidate& cand) const {
    const auto is_new = [&](Qubit q) {
      return std::any_of(cand.moves.begin(), cand.moves.end(), [q](const auto& m) { return m.first == q; });
    };
    const auto with_new = [&](Qubit q, QpuIndex at) {
      return s.shared(q, at) || std::any_of(cand.moves.begin(), cand.moves.end(),
                                            [&](const auto& m) { return m.first == q && m.second == at; });
    };
    const auto without = [&](Qubit q, QpuIndex at) { return s.shared(q, at); };
    cand.n_cov = 0;
    cand.covered.clear();
    for (std::size_t j = i; j < horizon(i); ++j) {
      const auto& g = c_.gates[j];
      bool locked = false;
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (is_new(g.qubits[k]) && breaks_share(g, k)) {
          locked = true;
        }
      }
      if (locked) {
        break;
      }
      if (!g.two_qubit() || !(is_new(g.qubits[0]) || is_new(g.qubits[1]))) {
        continue;
      }
      if (site_of(g, s.home, net_.qpus.size(), with_new) && !site_of(g, s.home, net_.qpus.size(), without)) {
        ++cand.n_cov;
        cand.covered.push_back(j);
      }
    }
    if (cand.covered.empty() || cand.covered.front() != i) {
      cand.n_cov = 0;
      cand.covered.clear();
    }
  }

private:
  [[nodiscard]] std::size_t horizon(std::size_t i) const noexcept {
    return std::min(c_.gates.size(), i + std::max<std::size_t>(1, opts_.window));
  }

  [[nodiscard]] static std::int64_t ready_time(const SchedulerState& s, const Gate& g) {
    auto t = s.ready[g.qubits[0]];
    if (g.two_qubit()) {
      t = std::max(t, s.ready[g.qubits[1]]);
    }
    return t;
  }

  void process(SchedulerState& s, std::size_t i, Strategy strategy, std::vector<DistributedOp>& out) const {
    const auto& g = c_.gates[i];
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (breaks_share(g, k)) {
        close_shares_of(s, g.qubits[k], out);
      }
    }
    if (const auto at = site(s, g)) {
      emit_gate(s, g, i, *at, out);
      return;
    }
    cover(s, i, strategy, out);
  }

  void cover(SchedulerState& s, std::size_t i, Strategy strategy, std::vector<DistributedOp>& out) const {
    const auto& g = c_.gates[i];
    const auto interval = net_.epr_gen_interval;
    const auto d_t = net_.mean_decoherence_time;
    const auto pick = [&](const std::vector<Candidate>& cands) -> const Candidate* {
      const Candidate* best = nullptr;
      for (const auto& c : cands) {
        if (best == nullptr || candidate_cost(c, interval, d_t) < candidate_cost(*best, interval, d_t)) {
          best = &c;
        }
      }
      return best;
    };
    std::vector<Candidate> td;
    if (strategy == Strategy::mixed) {
      td = teledata_candidates(s, i);
    }
    const auto tg = telegate_candidates(s, i);
    const auto* best_td = pick(td);
    const auto* best_tg = pick(tg);
    if (best_td == nullptr && best_tg == nullptr) {
      throw scheduling_error("no remote operation can cover gate " + std::to_string(i) + " (" + format_gate(g) +
                             "): no channel or free data qubit available");
    }
    // TeleData only on a strictly lower cost
    const bool use_td =
        best_td != nullptr && (best_tg == nullptr || candidate_cost(*best_td, interval, d_t) < candidate_cost(*best_tg, interval, d_t));
    const auto& chosen = use_td ? *best_td : *best_tg;

    if (chosen.lowering != Lowering::none) {
      emit_lowered(s, i, chosen, out);
      return;
    }
    bool first = true;
    for (const auto& [q, dest] : chosen.moves) {
      auto covered = first ? chosen.covered : std::vector<std::size_t>{};
      if (use_td) {
        teledata(s, q, dest, std::move(covered), out);
      } else {
        catent(s, q, dest, std::move(covered), out);
      }
      first = false;
    }
    const auto at = site(s, g);
    if (!at) {
      throw scheduling_error("internal: gate " + std::to_string(i) + " still remote after covering");
    }
    emit_gate(s, g, i, *at, out);
  }

  void emit_gate(SchedulerState& s, const Gate& g, std::size_t source, QpuIndex at,
                 std::vector<DistributedOp>& out) const {
    DistributedOp op;
    op.gate = g;
    op.source = source;
    op.qpu = at;
    out.push_back(op);
    const auto t = ready_time(s, g) + 1;
    for (std::size_t k = 0; k < g.size(); ++k) {
      s.ready[g.qubits[k]] = t;
    }
  }

  void emit_lowered(SchedulerState& s, std::size_t i, const Candidate& cand, std::vector<DistributedOp>& out) const {
    const auto& g = c_.gates[i];
    const auto u = g.qubits[0];
    const auto v = g.qubits[1];
    bool first = true;
    const auto covered = [&] {
      auto c = first ? std::vector<std::size_t>{i} : std::vector<std::size_t>{};
      first = false;
      return c;
    };
    // CX with the control shared into the target's QPU
    const auto shared_cx = [&](Qubit ctrl, Qubit tgt) {
      const auto at = s.home[tgt];
      catent(s, ctrl, at, covered(), out);
      emit_gate(s, gates::cx(ctrl, tgt), i, at, out);
      close_shares_of(s, ctrl, out);
    };
    // H(t) CZ(c,t) H(t) with both operands shared into `via`
    const auto cx_via = [&](Qubit ctrl, Qubit tgt) {
      close_shares_of(s, tgt, out);
      emit_gate(s, gates::h(tgt), i, s.home[tgt], out);
      if (!s.shared(ctrl, cand.via)) {
        catent(s, ctrl, cand.via, covered(), out);
      }
      catent(s, tgt, cand.via, covered(), out);
      emit_gate(s, gates::cz(ctrl, tgt), i, cand.via, out);
      close_shares_of(s, tgt, out);
      emit_gate(s, gates::h(tgt), i, s.home[tgt], out);
    };
    switch (cand.lowering) {
    case Lowering::swap_cx:
      shared_cx(u, v);
      shared_cx(v, u);
      shared_cx(u, v);
      break;
    case Lowering::cx_via_cz:
      cx_via(u, v);
      break;
    case Lowering::swap_via_cz:
      cx_via(u, v);
      cx_via(v, u);
      cx_via(u, v);
      break;
    case Lowering::none:
      break;
    }
  }

  std::size_t acquire_pair(SchedulerState& s, ChannelIndex ch, std::vector<DistributedOp>& out) const {
    std::optional<std::size_t> best;
    for (std::size_t p = 0; p < s.clock[ch].size(); ++p) {
      if (!s.busy[ch][p] && (!best || s.clock[ch][p] < s.clock[ch][*best])) {
        best = p;
      }
    }
    if (best) {
      return *best;
    }
    // all pairs hold shares: close the oldest one on this channel
    std::size_t oldest = s.shares.size();
    for (std::size_t k = 0; k < s.shares.size(); ++k) {
      if (s.shares[k].channel == ch && (oldest == s.shares.size() || s.shares[k].serial < s.shares[oldest].serial)) {
        oldest = k;
      }
    }
    const auto pair = s.shares[oldest].pair;
    close_share(s, oldest, out);
    return pair;
  }

  /// Reserves a pair on the channel and returns (pair, time of use).
  std::pair<std::size_t, std::int64_t> use_channel(SchedulerState& s, ChannelIndex ch, Qubit q,
                                                   std::vector<DistributedOp>& out) const {
    const auto p = acquire_pair(s, ch, out);
    const auto t = std::max(s.ready[q], s.clock[ch][p] + net_.epr_gen_interval);
    s.clock[ch][p] = t;
    s.ready[q] = t + 1;
    ++s.epr;
    return {p, t};
  }

  void teledata(SchedulerState& s, Qubit q, QpuIndex dest, std::vector<std::size_t> covered,
                std::vector<DistributedOp>& out) const {
    close_shares_of(s, q, out);
    const auto src = s.home[q];
    const auto ch = net_.channel_between(src, dest);
    if (s.free[dest] == 0) {
      throw scheduling_error("internal: teledata into a full QPU");
    }
    use_channel(s, ch, q, out);
    ++s.free[src];
    --s.free[dest];
    s.home[q] = dest;
    DistributedOp op;
    op.is_remote = true;
    op.remote = {RemoteKind::teledata, q, src, dest, ch, std::move(covered)};
    out.push_back(std::move(op));
  }

  void catent(SchedulerState& s, Qubit q, QpuIndex at, std::vector<std::size_t> covered,
              std::vector<DistributedOp>& out) const {
    const auto src = s.home[q];
    const auto ch = net_.channel_between(src, at);
    const auto [p, t] = use_channel(s, ch, q, out);
    s.busy[ch][p] = 1;
    s.shares.push_back({q, at, ch, p, s.serial++});
    DistributedOp op;
    op.is_remote = true;
    op.remote = {RemoteKind::catent, q, src, at, ch, std::move(covered)};
    out.push_back(std::move(op));
  }

  void close_share(SchedulerState& s, std::size_t k, std::vector<DistributedOp>& out) const {
    const auto sh = s.shares[k];
    s.shares.erase(s.shares.begin() + static_cast<std::ptrdiff_t>(k));
    s.busy[sh.channel][sh.pair] = 0;
    s.ready[sh.qubit] += 1;
    DistributedOp op;
    op.is_remote = true;
    op.remote = {RemoteKind::catdisent, sh.qubit, s.home[sh.qubit], sh.at, sh.channel, {}};
    out.push_back(std::move(op));
  }

  void close_shares_of(SchedulerState& s, Qubit q, std::vector<DistributedOp>& out) const {
    for (std::size_t k = 0; k < s.shares.size();) {
      if (s.shares[k].qubit == q) {
        close_share(s, k, out);
      } else {
        ++k;
      }
    }
  }

  const Circuit& c_;
  const NetworkConfig& net_;
  ScheduleOptions opts_;
};

} // namespace detail

/// Remote gate scheduler. Local gates pass through; each remote gate is
/// covered by the cheapest TeleData or TeleGate candidate. Under the mixed
/// strategy every window of `window` gates is compiled both ways and the
/// variant consuming fewer EPR pairs is kept.
inline DistributedCircuit schedule(const Circuit& c, const NetworkConfig& net, const Assignment& a,
                                   const ScheduleOptions& opts = {}) {
  if (a.partition.size() != c.num_qubits) {
    throw invalid_argument_error("schedule: assignment does not cover every circuit qubit");
  }
  if (a.capacities != net.capacities()) {
    throw invalid_argument_error("schedule: assignment capacities do not match the network");
  }
  if (!a.feasible()) {
    throw capacity_error("schedule: assignment exceeds a QPU capacity");
  }
  validate(c);
  const auto window = std::max<std::size_t>(1, opts.window);

  const detail::SchedulerPass pass(c, net, opts);
  SchedulerState state(a, net, c.num_qubits);
  DistributedCircuit dc;
  dc.num_qubits = c.num_qubits;
  dc.num_cbits = c.num_cbits;
  dc.initial = a;

  for (std::size_t first = 0; first < c.gates.size(); first += window) {
    const auto last = std::min(c.gates.size(), first + window);
    WindowRecord rec;
    rec.first = first;
    rec.last = last;
    if (opts.strategy == Strategy::telegate_only) {
      const auto before = state.epr;
      pass.run(state, first, last, Strategy::telegate_only, dc.ops);
      rec.epr_mixed = rec.epr_telegate = state.epr - before;
      rec.kept = Strategy::telegate_only;
    } else {
      auto mixed = state;
      auto tg = state;
      std::vector<DistributedOp> mixed_ops;
      std::vector<DistributedOp> tg_ops;
      // a variant that cannot cover some gate drops out of the comparison
      std::optional<scheduling_error> mixed_err;
      std::optional<scheduling_error> tg_err;
      try {
        pass.run(mixed, first, last, Strategy::mixed, mixed_ops);
      } catch (const scheduling_error& e) {
        mixed_err = e;
      }
      try {
        pass.run(tg, first, last, Strategy::telegate_only, tg_ops);
      } catch (const scheduling_error& e) {
        tg_err = e;
      }
      if (mixed_err && tg_err) {
        throw *tg_err;
      }
      rec.epr_mixed = mixed_err ? 0 : mixed.epr - state.epr;
      rec.epr_telegate = tg_err ? 0 : tg.epr - state.epr;
      rec.telegate_feasible = !tg_err;
      const bool keep_mixed = tg_err || (!mixed_err && rec.epr_mixed < rec.epr_telegate);
      rec.kept = keep_mixed ? Strategy::mixed : Strategy::telegate_only;
      state = keep_mixed ? std::move(mixed) : std::move(tg);
      auto& kept_ops = keep_mixed ? mixed_ops : tg_ops;
      dc.ops.insert(dc.ops.end(), std::make_move_iterator(kept_ops.begin()), std::make_move_iterator(kept_ops.end()));
    }
    dc.windows.push_back(rec);
  }
  pass.close_all(state, dc.ops);

  dc.final.partition = state.home;
  dc.final.capacities = a.capacities;
  dc.epr_pairs = state.epr;
  return dc;
}

} // namespace dqcc

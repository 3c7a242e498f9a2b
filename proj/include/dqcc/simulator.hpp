#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/errors.hpp"
#include "dqcc/gate.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace dqcc {

using Amplitude = std::complex<double>;

inline constexpr std::size_t max_sim_qubits = 16;

/// Dense statevector; qubit k is bit k of the basis index.
class StateVector {
public:
  StateVector() = default;
  explicit StateVector(std::size_t n) : n_(n) {
    if (n > max_sim_qubits) {
      throw oracle_scale_error("statevector of " + std::to_string(n) + " qubits exceeds the limit of " +
                               std::to_string(max_sim_qubits));
    }
    amp_.assign(std::size_t{1} << n, Amplitude{0.0, 0.0});
    amp_[0] = 1.0;
  }

  static StateVector basis(std::size_t n, std::size_t index) {
    StateVector s(n);
    s.amp_[0] = 0.0;
    s.amp_.at(index) = 1.0;
    return s;
  }

  /// Normalised complex Gaussian vector.
  template <typename Rng>
  static StateVector random(std::size_t n, Rng& rng) {
    StateVector s(n);
    std::normal_distribution<double> gauss;
    double norm = 0.0;
    for (auto& a : s.amp_) {
      a = {gauss(rng), gauss(rng)};
      norm += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& a : s.amp_) {
      a *= scale;
    }
    return s;
  }

  [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
  [[nodiscard]] const std::vector<Amplitude>& amplitudes() const noexcept { return amp_; }
  std::vector<Amplitude>& amplitudes() noexcept { return amp_; }

  [[nodiscard]] double norm() const {
    double s = 0.0;
    for (const auto& a : amp_) {
      s += std::norm(a);
    }
    return std::sqrt(s);
  }

  /// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to qubit q.
  void apply1(std::size_t q, Amplitude m00, Amplitude m01, Amplitude m10, Amplitude m11) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & bit) == 0) {
        const auto a0 = amp_[i];
        const auto a1 = amp_[i | bit];
        amp_[i] = m00 * a0 + m01 * a1;
        amp_[i | bit] = m10 * a0 + m11 * a1;
      }
    }
  }

  void cx(std::size_t c, std::size_t t) {
    const std::size_t cb = std::size_t{1} << c;
    const std::size_t tb = std::size_t{1} << t;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & cb) != 0 && (i & tb) == 0) {
        std::swap(amp_[i], amp_[i | tb]);
      }
    }
  }

  void cphase(std::size_t a, std::size_t b, Amplitude phase) {
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & mask) == mask) {
        amp_[i] *= phase;
      }
    }
  }

  void swap(std::size_t a, std::size_t b) {
    const std::size_t ab = std::size_t{1} << a;
    const std::size_t bb = std::size_t{1} << b;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & ab) != 0 && (i & bb) == 0) {
        std::swap(amp_[i], amp_[(i & ~ab) | bb]);
      }
    }
  }

  [[nodiscard]] double prob_one(std::size_t q) const {
    const std::size_t bit = std::size_t{1} << q;
    double p = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & bit) != 0) {
        p += std::norm(amp_[i]);
      }
    }
    return p;
  }

  /// Projects qubit q onto `outcome` and renormalises; `p` is its probability.
  void collapse(std::size_t q, int outcome, double p) {
    const std::size_t bit = std::size_t{1} << q;
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (((i & bit) != 0) == (outcome == 1)) {
        amp_[i] *= scale;
      } else {
        amp_[i] = 0.0;
      }
    }
  }

private:
  std::size_t n_{0};
  std::vector<Amplitude> amp_;
};

/// Probability below which a measurement branch is treated as impossible.
inline constexpr double branch_epsilon = 1e-12;

/// Applies a unitary (or EPR preparation) gate. Measurements are handled by
/// the simulation drivers.
inline void apply_gate(StateVector& s, const Gate& g) {
  using namespace std::complex_literals;
  const auto a = g.qubits[0];
  const auto b = g.qubits[1];
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
  case GateKind::h: s.apply1(a, r, r, r, -r); break;
  case GateKind::x: s.apply1(a, 0.0, 1.0, 1.0, 0.0); break;
  case GateKind::z: s.apply1(a, 1.0, 0.0, 0.0, -1.0); break;
  case GateKind::s: s.apply1(a, 1.0, 0.0, 0.0, 1i); break;
  case GateKind::t: s.apply1(a, 1.0, 0.0, 0.0, std::exp(1i * (M_PI / 4))); break;
  case GateKind::rz:
    s.apply1(a, std::exp(-1i * (g.angle / 2)), 0.0, 0.0, std::exp(1i * (g.angle / 2)));
    break;
  case GateKind::ry: {
    const double c = std::cos(g.angle / 2);
    const double sn = std::sin(g.angle / 2);
    s.apply1(a, c, -sn, sn, c);
    break;
  }
  case GateKind::cx: s.cx(a, b); break;
  case GateKind::cz: s.cphase(a, b, -1.0); break;
  case GateKind::cp: s.cphase(a, b, std::exp(1i * g.angle)); break;
  case GateKind::swap: s.swap(a, b); break;
  case GateKind::epr:
    // fresh Bell pair; both qubits must hold a definite basis state
    for (auto q : {a, b}) {
      const double p1 = s.prob_one(q);
      if (p1 > 1e-9 && p1 < 1.0 - 1e-9) {
        throw equivalence_failure("EPR generation on qubit " + std::to_string(q) +
                                  " which still carries a superposed state");
      }
      if (p1 >= 0.5) {
        s.apply1(q, 0.0, 1.0, 1.0, 0.0);
      }
    }
    s.apply1(a, r, r, r, -r);
    s.cx(a, b);
    break;
  case GateKind::measure:
    throw invalid_argument_error("apply_gate: measurement needs a simulation driver");
  }
}

struct SimOptions {
  bool check_norm{true};
  double norm_tol{1e-9};
};

struct Branch {
  StateVector state;
  std::vector<int> cbits;
  double probability{1.0};
};

namespace detail {

inline void check_norm(const StateVector& s, const SimOptions& opts, std::size_t gate) {
  if (opts.check_norm && std::abs(s.norm() - 1.0) > opts.norm_tol) {
    throw equivalence_failure("norm drifted to " + std::to_string(s.norm()) + " after gate " + std::to_string(gate));
  }
}

/// Runs `c` from gate `i`; at each measurement `choose` picks outcomes and
/// `sink` receives finished branches.
inline void run_from(const Circuit& c, Branch br, std::size_t i, const SimOptions& opts,
                     const std::function<std::vector<int>(double)>& choose, const std::function<void(Branch&&)>& sink) {
  for (; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    if (g.conditioned() && br.cbits.at(static_cast<std::size_t>(g.condition)) == 0) {
      continue;
    }
    if (g.kind != GateKind::measure) {
      apply_gate(br.state, g);
      detail::check_norm(br.state, opts, i);
      continue;
    }
    const double p1 = br.state.prob_one(g.qubits[0]);
    const auto outcomes = choose(p1);
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      const int o = outcomes[k];
      const double p = o == 1 ? p1 : 1.0 - p1;
      if (p < branch_epsilon) {
        continue;
      }
      Branch next;
      if (k + 1 == outcomes.size()) {
        next = std::move(br);
      } else {
        next = br;
      }
      next.state.collapse(g.qubits[0], o, p);
      next.cbits.at(static_cast<std::size_t>(g.cbit)) = o;
      next.probability *= p;
      run_from(c, std::move(next), i + 1, opts, choose, sink);
    }
    return;
  }
  sink(std::move(br));
}

} // namespace detail

/// Every measurement branch with non-zero probability.
/// Visits every nonzero-probability branch without keeping them all.
template <class Visit>
void for_each_branch(const Circuit& c, const StateVector& input, Visit&& visit, const SimOptions& opts = {}) {
  if (input.num_qubits() != c.num_qubits) {
    throw invalid_argument_error("simulate: input width does not match the circuit");
  }
  detail::run_from(
      c, Branch{input, std::vector<int>(c.num_cbits, 0), 1.0}, 0, opts,
      [](double) { return std::vector<int>{0, 1}; }, [&](Branch&& b) { visit(std::move(b)); });
}

inline std::vector<Branch> simulate_branches(const Circuit& c, const StateVector& input, const SimOptions& opts = {}) {
  std::vector<Branch> out;
  for_each_branch(c, input, [&](Branch&& b) { out.push_back(std::move(b)); }, opts);
  return out;
}

/// One branch, measurement outcomes sampled from `seed`.
inline Branch simulate(const Circuit& c, const StateVector& input, std::uint64_t seed, const SimOptions& opts = {}) {
  if (input.num_qubits() != c.num_qubits) {
    throw invalid_argument_error("simulate: input width does not match the circuit");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Branch out;
  detail::run_from(
      c, Branch{input, std::vector<int>(c.num_cbits, 0), 1.0}, 0, opts,
      [&](double p1) {
        // never pick a zero-probability outcome
        if (p1 < branch_epsilon) {
          return std::vector<int>{0};
        }
        if (p1 > 1.0 - branch_epsilon) {
          return std::vector<int>{1};
        }
        return std::vector<int>{unit(rng) < p1 ? 1 : 0};
      },
      [&](Branch&& b) { out = std::move(b); });
  return out;
}

/// Measurement outcomes forced bit by bit from `pattern` (LSB first). An
/// impossible pattern yields a branch of probability 0.
inline Branch simulate_forced(const Circuit& c, const StateVector& input, std::uint64_t pattern,
                              const SimOptions& opts = {}) {
  std::size_t k = 0;
  Branch out;
  out.probability = 0.0;
  detail::run_from(
      c, Branch{input, std::vector<int>(c.num_cbits, 0), 1.0}, 0, opts,
      [&](double) { return std::vector<int>{static_cast<int>((pattern >> k++) & 1U)}; },
      [&](Branch&& b) { out = std::move(b); });
  return out;
}

/// Unitary-only simulation (no measurements allowed).
inline StateVector simulate_unitary(const Circuit& c, StateVector s, const SimOptions& opts = {}) {
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    if (g.kind == GateKind::measure || g.conditioned()) {
      throw invalid_argument_error("simulate_unitary: circuit contains measurements");
    }
    apply_gate(s, g);
    detail::check_norm(s, opts, i);
  }
  return s;
}

} // namespace dqcc

#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/errors.hpp"
#include "dqcc/router.hpp"
#include "dqcc/simulator.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dqcc {

struct EquivalenceOptions {
  std::size_t trials{3};
  double tol{1e-9};
  std::uint64_t seed{1};
  std::size_t max_enumerated_measurements{8}; // beyond this, sample branches
  std::size_t sampled_branches{32};
};

struct EquivalenceReport {
  bool pass{false};
  double max_distance{0.0};
  std::size_t branches{0}; // total branches compared over all trials
  bool sampled{false};
  std::string diagnostic;
};

inline constexpr std::size_t max_mono_qubits = 10;

/// Places logical basis index `x` at the physical positions `layout`.
inline std::size_t embed_index(std::size_t x, const std::vector<PhysQubit>& layout) {
  std::size_t out = 0;
  for (std::size_t j = 0; j < layout.size(); ++j) {
    if ((x >> j) & 1U) {
      out |= std::size_t{1} << layout[j];
    }
  }
  return out;
}

/// Embeds a logical state into the physical register (other qubits |0>).
inline StateVector embed_state(const StateVector& logical, const std::vector<PhysQubit>& layout, std::size_t width) {
  StateVector s(width);
  s.amplitudes()[0] = 0.0;
  for (std::size_t x = 0; x < logical.amplitudes().size(); ++x) {
    s.amplitudes()[embed_index(x, layout)] = logical.amplitudes()[x];
  }
  return s;
}

struct Factorization {
  double residual{0.0}; // || M - phi (x) a ||_F
  double purity{1.0};   // of the reduced state on the logical positions
};

/// Splits `state` into the logical positions `layout` and the rest, fits
/// the best product phi (x) a and reports the Frobenius residual.
inline Factorization factor_against(const StateVector& state, const std::vector<PhysQubit>& layout,
                                    const StateVector& phi, bool with_purity) {
  const auto n = state.num_qubits();
  std::size_t logical_mask = 0;
  for (auto p : layout) {
    logical_mask |= std::size_t{1} << p;
  }
  std::vector<std::size_t> rest_bits;
  for (std::size_t q = 0; q < n; ++q) {
    if (((logical_mask >> q) & 1U) == 0) {
      rest_bits.push_back(q);
    }
  }
  const std::size_t rows = phi.amplitudes().size();
  const std::size_t cols = std::size_t{1} << rest_bits.size();
  std::vector<std::size_t> row_index(rows);
  for (std::size_t x = 0; x < rows; ++x) {
    row_index[x] = embed_index(x, layout);
  }
  std::vector<std::size_t> col_index(cols);
  for (std::size_t r = 0; r < cols; ++r) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < rest_bits.size(); ++k) {
      if ((r >> k) & 1U) {
        idx |= std::size_t{1} << rest_bits[k];
      }
    }
    col_index[r] = idx;
  }
  const auto& amp = state.amplitudes();
  const auto& ph = phi.amplitudes();
  std::vector<Amplitude> a(cols, 0.0);
  for (std::size_t r = 0; r < cols; ++r) {
    for (std::size_t x = 0; x < rows; ++x) {
      a[r] += std::conj(ph[x]) * amp[row_index[x] | col_index[r]];
    }
  }
  Factorization f;
  double res = 0.0;
  for (std::size_t r = 0; r < cols; ++r) {
    for (std::size_t x = 0; x < rows; ++x) {
      res += std::norm(amp[row_index[x] | col_index[r]] - ph[x] * a[r]);
    }
  }
  f.residual = std::sqrt(res);
  if (with_purity) {
    // tr(rho^2) with rho = M M^dagger
    std::vector<Amplitude> rho(rows * rows, 0.0);
    for (std::size_t x = 0; x < rows; ++x) {
      for (std::size_t y = 0; y < rows; ++y) {
        for (std::size_t r = 0; r < cols; ++r) {
          rho[x * rows + y] += amp[row_index[x] | col_index[r]] * std::conj(amp[row_index[y] | col_index[r]]);
        }
      }
    }
    double p = 0.0;
    for (const auto& v : rho) {
      p += std::norm(v);
    }
    f.purity = p;
  }
  return f;
}

namespace detail {

inline std::size_t count_measurements(const Circuit& c) { return c.count(GateKind::measure); }

/// Drops physical qubits no gate or layout touches; they stay |0> throughout.
inline CompiledCircuit compact(const CompiledCircuit& cc) {
  std::vector<bool> used(cc.circuit.num_qubits, false);
  for (const auto& g : cc.circuit.gates) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      used[g.qubits[i]] = true;
    }
  }
  for (const auto* layout : {&cc.initial, &cc.final}) {
    for (auto p : *layout) {
      if (p >= used.size()) {
        throw invalid_argument_error("check_equivalence: layout qubit " + std::to_string(p) + " outside the register");
      }
      used[p] = true;
    }
  }
  std::vector<PhysQubit> index(used.size(), 0);
  std::size_t n = 0;
  for (std::size_t p = 0; p < used.size(); ++p) {
    if (used[p]) {
      index[p] = n++;
    }
  }
  CompiledCircuit out;
  out.num_logical = cc.num_logical;
  out.program_cbits = cc.program_cbits;
  out.circuit = Circuit(n, cc.circuit.num_cbits);
  for (auto g : cc.circuit.gates) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.qubits[i] = index[g.qubits[i]];
    }
    out.circuit.gates.push_back(g);
  }
  for (auto p : cc.initial) {
    out.initial.push_back(index[p]);
  }
  for (auto p : cc.final) {
    out.final.push_back(index[p]);
  }
  return out;
}

} // namespace detail

/// Compares a compiled circuit against the monolithic circuit it came from
/// on random input states, over every (or a sample of) measurement branch.
/// The compiled state must factor as (mono output at the final layout) (x)
/// (anything on the remaining qubits). Throws equivalence_failure when the
/// logical qubits stay entangled with the rest.
inline EquivalenceReport check_equivalence(const Circuit& mono, const CompiledCircuit& full,
                                           const EquivalenceOptions& opts = {}) {
  if (mono.num_qubits > max_mono_qubits) {
    throw oracle_scale_error("monolithic circuit of " + std::to_string(mono.num_qubits) + " qubits exceeds the limit of " +
                             std::to_string(max_mono_qubits));
  }
  if (full.initial.size() != mono.num_qubits || full.final.size() != mono.num_qubits) {
    throw invalid_argument_error("check_equivalence: circuits disagree on the logical qubit count");
  }
  const auto cc = detail::compact(full);
  if (cc.circuit.num_qubits > max_sim_qubits) {
    throw oracle_scale_error("compiled circuit of " + std::to_string(cc.circuit.num_qubits) +
                             " qubits exceeds the limit of " + std::to_string(max_sim_qubits));
  }
  if (mono.num_qubits != cc.num_logical || cc.initial.size() != mono.num_qubits) {
    throw invalid_argument_error("check_equivalence: circuits disagree on the logical qubit count");
  }
  for (const auto& g : mono.gates) {
    if (g.kind == GateKind::measure || g.conditioned()) {
      throw invalid_argument_error("check_equivalence: monolithic circuit must be unitary");
    }
  }
  const bool sample = detail::count_measurements(cc.circuit) > opts.max_enumerated_measurements;
  std::mt19937_64 rng(opts.seed);
  EquivalenceReport rep;
  rep.sampled = sample;

  for (std::size_t t = 0; t < opts.trials; ++t) {
    const auto input = StateVector::random(mono.num_qubits, rng);
    const auto expected = simulate_unitary(mono, input);
    const auto start = embed_state(input, cc.initial, cc.circuit.num_qubits);
    auto compare = [&](const Branch& br) {
      const auto f = factor_against(br.state, cc.final, expected, false);
      ++rep.branches;
      rep.max_distance = std::max(rep.max_distance, f.residual);
      if (f.residual > opts.tol && rep.diagnostic.empty()) {
        const auto full = factor_against(br.state, cc.final, expected, true);
        if (full.purity < 1.0 - 1e-6) {
          throw equivalence_failure("logical qubits remain entangled with communication/ancilla qubits (purity " +
                                    std::to_string(full.purity) + ", trial " + std::to_string(t) + ")");
        }
        rep.diagnostic = "state mismatch on trial " + std::to_string(t) + ": distance " + std::to_string(f.residual);
      }
    };
    if (sample) {
      for (std::size_t k = 0; k < opts.sampled_branches; ++k) {
        compare(simulate(cc.circuit, start, rng()));
      }
    } else {
      for_each_branch(cc.circuit, start, compare);
    }
  }
  rep.pass = rep.max_distance <= opts.tol;
  return rep;
}

} // namespace dqcc

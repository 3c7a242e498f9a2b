#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/errors.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace dqcc {

inline constexpr std::uint64_t default_ansatz_seed = 0x5eed0fa75a7ULL;

/// Textbook QFT. The trailing qubit-reversal SWAPs are optional.
inline Circuit gen_qft(std::size_t n, bool final_swaps = true) {
  if (n == 0) {
    throw invalid_argument_error("gen_qft: need at least one qubit");
  }
  Circuit c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.add(gates::h(static_cast<Qubit>(i)));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double angle = std::numbers::pi / std::ldexp(1.0, static_cast<int>(j - i));
      c.add(gates::cp(static_cast<Qubit>(j), static_cast<Qubit>(i), angle));
    }
  }
  if (final_swaps) {
    for (std::size_t i = 0; i < n / 2; ++i) {
      c.add(gates::swap(static_cast<Qubit>(i), static_cast<Qubit>(n - 1 - i)));
    }
  }
  return c;
}

/// Edges of the 2 x (n/2) ladder: rails along both rows, then the rungs.
inline std::vector<std::pair<Qubit, Qubit>> ladder_edges(std::size_t n) {
  const auto cols = n / 2;
  std::vector<std::pair<Qubit, Qubit>> edges;
  for (std::size_t row = 0; row < 2; ++row) {
    for (std::size_t col = 0; col + 1 < cols; ++col) {
      edges.emplace_back(static_cast<Qubit>(row * cols + col), static_cast<Qubit>(row * cols + col + 1));
    }
  }
  for (std::size_t col = 0; col < cols; ++col) {
    edges.emplace_back(static_cast<Qubit>(col), static_cast<Qubit>(cols + col));
  }
  return edges;
}

/// Graph-state preparation over an explicit edge list.
inline Circuit gen_graph_state(std::size_t n, const std::vector<std::pair<Qubit, Qubit>>& edges) {
  Circuit c(n);
  for (std::size_t q = 0; q < n; ++q) {
    c.add(gates::h(static_cast<Qubit>(q)));
  }
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n || a == b) {
      throw invalid_argument_error("gen_graph_state: bad edge (" + std::to_string(a) + "," +
                                   std::to_string(b) + ")");
    }
    c.add(gates::cz(a, b));
  }
  return c;
}

/// Graph state of the 2 x (n/2) ladder graph.
inline Circuit gen_graph_state(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw invalid_argument_error("gen_graph_state: ladder needs an even qubit count >= 2");
  }
  return gen_graph_state(n, ladder_edges(n));
}

/// Hardware-efficient ansatz: `reps` x (RY layer + linear CX chain), then a
/// closing RY layer. Angles are drawn uniformly from [0, 2pi) with `seed`.
inline Circuit gen_vqe_ansatz(std::size_t n, std::size_t reps, std::uint64_t seed = default_ansatz_seed) {
  if (n < 2 || reps < 1) {
    throw invalid_argument_error("gen_vqe_ansatz: need n >= 2 and reps >= 1");
  }
  std::mt19937_64 rng(seed);
  // draw through the raw engine so the angles do not depend on the library's
  // distribution implementation
  const auto angle = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;
  };
  Circuit c(n);
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t q = 0; q < n; ++q) {
      c.add(gates::ry(static_cast<Qubit>(q), angle()));
    }
    for (std::size_t q = 0; q + 1 < n; ++q) {
      c.add(gates::cx(static_cast<Qubit>(q), static_cast<Qubit>(q + 1)));
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    c.add(gates::ry(static_cast<Qubit>(q), angle()));
  }
  return c;
}

} // namespace dqcc

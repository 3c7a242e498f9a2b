#pragma once

#include "dqcc/errors.hpp"
#include "dqcc/gate.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace dqcc {

/// Ordered gate list over `num_qubits` qubits and `num_cbits` classical bits.
struct Circuit {
  std::size_t num_qubits{0};
  std::size_t num_cbits{0};
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(std::size_t qubits, std::size_t cbits = 0) : num_qubits(qubits), num_cbits(cbits) {}

  Circuit& add(const Gate& g) {
    gates.push_back(g);
    return *this;
  }

  [[nodiscard]] std::size_t size() const noexcept { return gates.size(); }

  [[nodiscard]] std::size_t two_qubit_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.two_qubit(); }));
  }

  [[nodiscard]] std::size_t count(GateKind k) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(), [k](const Gate& g) { return g.kind == k; }));
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Checks operand bounds and per-gate invariants. A classical bit may be the
/// destination of several measurements only when `allow_bit_reuse` is set.
inline void validate(const Circuit& c, bool allow_bit_reuse = false) {
  std::set<ClassicalBit> written;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    try {
      check_gate(g);
    } catch (const invalid_argument_error& e) {
      throw invalid_argument_error("gate " + std::to_string(i) + ": " + e.what());
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.qubits[k] >= c.num_qubits) {
        throw invalid_argument_error("gate " + std::to_string(i) + ": qubit " +
                                     std::to_string(g.qubits[k]) + " out of range");
      }
    }
    if (g.kind == GateKind::measure) {
      if (static_cast<std::size_t>(g.cbit) >= c.num_cbits) {
        throw invalid_argument_error("gate " + std::to_string(i) + ": classical bit out of range");
      }
      if (!written.insert(g.cbit).second && !allow_bit_reuse) {
        throw invalid_argument_error("gate " + std::to_string(i) + ": classical bit c" +
                                     std::to_string(g.cbit) + " measured twice");
      }
    }
    if (g.conditioned() && static_cast<std::size_t>(g.condition) >= c.num_cbits) {
      throw invalid_argument_error("gate " + std::to_string(i) + ": condition bit out of range");
    }
  }
}

struct Layering {
  std::vector<std::vector<std::size_t>> layers;
  std::vector<std::size_t> layer_of; // gate index -> layer index

  [[nodiscard]] std::size_t depth() const noexcept { return layers.size(); }
};

/// ASAP layering: every gate goes one layer after the latest earlier gate it
/// shares a qubit or classical bit with.
inline Layering compute_layering(const Circuit& c) {
  Layering out;
  out.layer_of.resize(c.gates.size());
  // next free layer per resource; qubits first, then classical bits
  std::vector<std::size_t> next(c.num_qubits + c.num_cbits, 0);
  const auto bit_slot = [&](ClassicalBit b) { return c.num_qubits + static_cast<std::size_t>(b); };

  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    std::size_t layer = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      layer = std::max(layer, next[g.qubits[k]]);
    }
    if (g.cbit != no_bit) {
      layer = std::max(layer, next[bit_slot(g.cbit)]);
    }
    if (g.conditioned()) {
      layer = std::max(layer, next[bit_slot(g.condition)]);
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      next[g.qubits[k]] = layer + 1;
    }
    if (g.cbit != no_bit) {
      next[bit_slot(g.cbit)] = layer + 1;
    }
    if (g.conditioned()) {
      next[bit_slot(g.condition)] = layer + 1;
    }
    if (layer >= out.layers.size()) {
      out.layers.resize(layer + 1);
    }
    out.layers[layer].push_back(i);
    out.layer_of[i] = layer;
  }
  return out;
}

} // namespace dqcc

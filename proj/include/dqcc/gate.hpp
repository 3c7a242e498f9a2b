#pragma once

#include "dqcc/errors.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dqcc {

using Qubit = std::uint32_t;
using ClassicalBit = std::int32_t;

inline constexpr ClassicalBit no_bit = -1;

enum class GateKind : std::uint8_t {
  h,
  x,
  z,
  s,
  t,
  rz,
  ry,
  cx,
  cz,
  cp,
  swap,
  measure,
  epr, // Bell-pair generation on two communication qubits
};

/// Where a gate came from. Only used for bookkeeping (metrics, serialization);
/// it never changes what a gate does.
enum class GateOrigin : std::uint8_t {
  program, // present in the source circuit
  routing, // SWAP inserted to make a local gate executable
  remote,  // part of a remote-operation expansion, or routing in its service
};

[[nodiscard]] constexpr std::size_t arity(GateKind k) noexcept {
  switch (k) {
  case GateKind::cx:
  case GateKind::cz:
  case GateKind::cp:
  case GateKind::swap:
  case GateKind::epr:
    return 2;
  default:
    return 1;
  }
}

[[nodiscard]] constexpr bool has_angle(GateKind k) noexcept {
  return k == GateKind::rz || k == GateKind::ry || k == GateKind::cp;
}

/// True when the gate is diagonal in the computational basis of operand `slot`.
/// Such an operand acts only as a control and may be served by a cat-entangled
/// copy on another QPU.
[[nodiscard]] constexpr bool control_role(GateKind k, std::size_t slot) noexcept {
  switch (k) {
  case GateKind::cz:
  case GateKind::cp:
    return true;
  case GateKind::cx:
    return slot == 0;
  default:
    return false;
  }
}

[[nodiscard]] inline std::string_view mnemonic(GateKind k) noexcept {
  switch (k) {
  case GateKind::h: return "h";
  case GateKind::x: return "x";
  case GateKind::z: return "z";
  case GateKind::s: return "s";
  case GateKind::t: return "t";
  case GateKind::rz: return "rz";
  case GateKind::ry: return "ry";
  case GateKind::cx: return "cx";
  case GateKind::cz: return "cz";
  case GateKind::cp: return "cp";
  case GateKind::swap: return "swap";
  case GateKind::measure: return "measure";
  case GateKind::epr: return "epr";
  }
  return "?";
}

[[nodiscard]] inline std::optional<GateKind> kind_from_mnemonic(std::string_view s) noexcept {
  for (auto k : {GateKind::h, GateKind::x, GateKind::z, GateKind::s, GateKind::t, GateKind::rz,
                 GateKind::ry, GateKind::cx, GateKind::cz, GateKind::cp, GateKind::swap,
                 GateKind::measure, GateKind::epr}) {
    if (mnemonic(k) == s) {
      return k;
    }
  }
  return std::nullopt;
}

struct Gate {
  GateKind kind{GateKind::h};
  std::array<Qubit, 2> qubits{0, 0};
  double angle{0.0};
  ClassicalBit cbit{no_bit};      // measurement destination
  ClassicalBit condition{no_bit}; // apply only if this bit reads 1
  GateOrigin origin{GateOrigin::program};

  [[nodiscard]] std::size_t size() const noexcept { return arity(kind); }
  [[nodiscard]] bool two_qubit() const noexcept { return size() == 2; }
  [[nodiscard]] bool conditioned() const noexcept { return condition != no_bit; }

  [[nodiscard]] bool acts_on(Qubit q) const noexcept {
    return qubits[0] == q || (two_qubit() && qubits[1] == q);
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

namespace gates {

inline Gate single(GateKind k, Qubit q, double angle = 0.0) {
  Gate g;
  g.kind = k;
  g.qubits = {q, q};
  g.angle = angle;
  return g;
}

inline Gate h(Qubit q) { return single(GateKind::h, q); }
inline Gate x(Qubit q) { return single(GateKind::x, q); }
inline Gate z(Qubit q) { return single(GateKind::z, q); }
inline Gate s(Qubit q) { return single(GateKind::s, q); }
inline Gate t(Qubit q) { return single(GateKind::t, q); }
inline Gate rz(Qubit q, double a) { return single(GateKind::rz, q, a); }
inline Gate ry(Qubit q, double a) { return single(GateKind::ry, q, a); }

inline Gate pair(GateKind k, Qubit a, Qubit b, double angle = 0.0) {
  Gate g;
  g.kind = k;
  g.qubits = {a, b};
  g.angle = angle;
  return g;
}

inline Gate cx(Qubit c, Qubit t) { return pair(GateKind::cx, c, t); }
inline Gate cz(Qubit a, Qubit b) { return pair(GateKind::cz, a, b); }
inline Gate cp(Qubit a, Qubit b, double a_) { return pair(GateKind::cp, a, b, a_); }
inline Gate swap(Qubit a, Qubit b) { return pair(GateKind::swap, a, b); }
inline Gate epr(Qubit a, Qubit b) { return pair(GateKind::epr, a, b); }

inline Gate measure(Qubit q, ClassicalBit c) {
  auto g = single(GateKind::measure, q);
  g.cbit = c;
  return g;
}

inline Gate conditioned(Gate g, ClassicalBit c) {
  g.condition = c;
  return g;
}

inline Gate tagged(Gate g, GateOrigin o) {
  g.origin = o;
  return g;
}

} // namespace gates

/// Throws invalid_argument_error if `g` breaks a structural gate invariant.
inline void check_gate(const Gate& g) {
  if (g.two_qubit() && g.qubits[0] == g.qubits[1]) {
    throw invalid_argument_error("two-qubit gate '" + std::string(mnemonic(g.kind)) +
                                 "' with identical operands");
  }
  if (has_angle(g.kind) && !std::isfinite(g.angle)) {
    throw invalid_argument_error("non-finite gate angle");
  }
  if (g.kind == GateKind::measure && g.cbit < 0) {
    throw invalid_argument_error("measurement without a classical destination");
  }
  if (g.kind != GateKind::measure && g.cbit != no_bit) {
    throw invalid_argument_error("classical destination on a non-measurement gate");
  }
  if (g.conditioned() && g.two_qubit()) {
    throw invalid_argument_error("classical conditions are supported on single-qubit gates only");
  }
}

} // namespace dqcc

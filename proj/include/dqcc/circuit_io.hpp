#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dqcc {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > start) {
      out.emplace_back(line.substr(start, i - start));
    }
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  Int v{};
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end) {
    return std::nullopt;
  }
  return v;
}

inline std::optional<double> parse_double(std::string_view s) {
  // from_chars for double is incomplete in older toolchains
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    return std::nullopt;
  }
  return v;
}

/// Shortest text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) {
      break;
    }
  }
  return buf;
}

inline std::optional<ClassicalBit> parse_cbit(std::string_view s) {
  if (s.size() < 2 || s.front() != 'c') {
    return std::nullopt;
  }
  return parse_int<ClassicalBit>(s.substr(1));
}

} // namespace detail

/// One gate line of the native format, with the optional annotations used by
/// compiled circuits (`@QPUk`, `remote`, `routing`).
struct GateLine {
  Gate gate;
  std::optional<std::string> qpu;
};

/// Parses `h 0`, `cx 0 1`, `cp 0 1 1.57`, `measure 0 -> c0`, `x 3 if c1`,
/// optionally followed by annotations. Returns nullopt if the mnemonic is unknown.
inline std::optional<GateLine> parse_gate_line(const std::vector<std::string>& tok, std::size_t lineno) {
  if (tok.empty()) {
    return std::nullopt;
  }
  const auto kind = kind_from_mnemonic(tok[0]);
  if (!kind) {
    return std::nullopt;
  }
  GateLine out;
  auto& g = out.gate;
  g.kind = *kind;
  std::size_t i = 1;
  const auto need = [&](std::string_view what) -> const std::string& {
    if (i >= tok.size()) {
      throw parse_error("missing " + std::string(what) + " for '" + tok[0] + "'", lineno);
    }
    return tok[i++];
  };
  for (std::size_t k = 0; k < arity(g.kind); ++k) {
    const auto& t = need("qubit");
    const auto q = detail::parse_int<Qubit>(t);
    if (!q) {
      throw parse_error("bad qubit index '" + t + "'", lineno);
    }
    g.qubits[k] = *q;
  }
  if (arity(g.kind) == 1) {
    g.qubits[1] = g.qubits[0];
  }
  if (has_angle(g.kind)) {
    const auto& t = need("angle");
    const auto a = detail::parse_double(t);
    if (!a || !std::isfinite(*a)) {
      throw parse_error("bad angle '" + t + "'", lineno);
    }
    g.angle = *a;
  }
  if (g.kind == GateKind::measure) {
    if (need("'->'") != "->") {
      throw parse_error("expected '->' in measurement", lineno);
    }
    const auto& t = need("classical bit");
    const auto b = detail::parse_cbit(t);
    if (!b || *b < 0) {
      throw parse_error("bad classical bit '" + t + "'", lineno);
    }
    g.cbit = *b;
  }
  for (; i < tok.size(); ++i) {
    const auto& t = tok[i];
    if (t == "if") {
      ++i;
      if (i >= tok.size()) {
        throw parse_error("missing condition bit", lineno);
      }
      const auto b = detail::parse_cbit(tok[i]);
      if (!b || *b < 0) {
        throw parse_error("bad condition bit '" + tok[i] + "'", lineno);
      }
      g.condition = *b;
    } else if (t == "remote") {
      g.origin = GateOrigin::remote;
    } else if (t == "routing") {
      g.origin = GateOrigin::routing;
    } else if (t.size() > 1 && t.front() == '@') {
      out.qpu = t.substr(1);
    } else {
      throw parse_error("unexpected token '" + t + "'", lineno);
    }
  }
  return out;
}

inline std::string format_gate(const Gate& g) {
  std::string s(mnemonic(g.kind));
  for (std::size_t k = 0; k < g.size(); ++k) {
    s += ' ';
    s += std::to_string(g.qubits[k]);
  }
  if (has_angle(g.kind)) {
    s += ' ';
    s += detail::format_double(g.angle);
  }
  if (g.kind == GateKind::measure) {
    s += " -> c" + std::to_string(g.cbit);
  }
  if (g.conditioned()) {
    s += " if c" + std::to_string(g.condition);
  }
  return s;
}

/// Native one-gate-per-line format. Header `qubits N`; `cbits M` is optional
/// and otherwise inferred from the highest bit used.
inline Circuit parse_circuit(std::string_view text) {
  Circuit c;
  bool have_qubits = false;
  bool have_cbits = false;
  std::size_t max_bit = 0;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const auto tok = detail::split_ws(line);
    if (tok[0] == "qubits" || tok[0] == "cbits") {
      if (tok.size() != 2) {
        throw parse_error("expected '" + tok[0] + " <count>'", lineno);
      }
      const auto n = detail::parse_int<std::size_t>(tok[1]);
      if (!n) {
        throw parse_error("bad count '" + tok[1] + "'", lineno);
      }
      if (tok[0] == "qubits") {
        c.num_qubits = *n;
        have_qubits = true;
      } else {
        c.num_cbits = *n;
        have_cbits = true;
      }
      continue;
    }
    if (!have_qubits) {
      throw parse_error("gate before 'qubits' header", lineno);
    }
    auto parsed = parse_gate_line(tok, lineno);
    if (!parsed) {
      throw parse_error("unknown gate '" + tok[0] + "'", lineno);
    }
    const auto& g = parsed->gate;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.qubits[k] >= c.num_qubits) {
        throw parse_error("qubit " + std::to_string(g.qubits[k]) + " out of range", lineno);
      }
    }
    if (g.two_qubit() && g.qubits[0] == g.qubits[1]) {
      throw parse_error("two-qubit gate with identical operands", lineno);
    }
    if (g.cbit != no_bit) {
      max_bit = std::max(max_bit, static_cast<std::size_t>(g.cbit) + 1);
    }
    if (g.conditioned()) {
      max_bit = std::max(max_bit, static_cast<std::size_t>(g.condition) + 1);
    }
    c.gates.push_back(g);
  }
  if (!have_qubits) {
    throw parse_error("missing 'qubits' header");
  }
  if (!have_cbits) {
    c.num_cbits = max_bit;
  } else if (max_bit > c.num_cbits) {
    throw parse_error("classical bit index exceeds 'cbits' header");
  }
  return c;
}

inline std::string serialize_circuit(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.num_qubits) + "\n";
  if (c.num_cbits > 0) {
    out += "cbits " + std::to_string(c.num_cbits) + "\n";
  }
  for (const auto& g : c.gates) {
    out += format_gate(g);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// OpenQASM 2 subset

namespace detail {

/// Recursive-descent evaluator for angle expressions: numbers, `pi`, + - * /,
/// unary minus and parentheses.
class AngleExpr {
public:
  AngleExpr(std::string_view s, std::size_t line) : s_(s), line_(line) {}

  double eval() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) {
      fail();
    }
    return v;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }
  [[noreturn]] void fail() const {
    throw parse_error("bad angle expression '" + std::string(s_) + "'", line_);
  }
  double sum() {
    double v = product();
    for (;;) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        const char op = s_[pos_++];
        const double r = product();
        v = op == '+' ? v + r : v - r;
      } else {
        return v;
      }
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
        const char op = s_[pos_++];
        const double r = unary();
        v = op == '*' ? v * r : v / r;
      } else {
        return v;
      }
    }
  }
  double unary() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      return -unary();
    }
    if (pos_ < s_.size() && s_[pos_] == '+') {
      ++pos_;
      return unary();
    }
    return atom();
  }
  double atom() {
    skip();
    if (pos_ >= s_.size()) {
      fail();
    }
    if (s_[pos_] == '(') {
      ++pos_;
      const double v = sum();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') {
        fail();
      }
      ++pos_;
      return v;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    const auto start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                s_[pos_] == 'e' || s_[pos_] == 'E' ||
                                ((s_[pos_] == '-' || s_[pos_] == '+') && pos_ > start &&
                                 (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    const auto v = parse_double(s_.substr(start, pos_ - start));
    if (!v) {
      fail();
    }
    return *v;
  }

  std::string_view s_;
  std::size_t pos_{0};
  std::size_t line_;
};

struct QasmStatement {
  std::string text;
  std::size_t line;
};

/// Splits on ';', drops `//` comments, tracks the line each statement starts on.
inline std::vector<QasmStatement> qasm_statements(std::string_view text) {
  std::vector<QasmStatement> out;
  std::string cur;
  std::size_t line = 1;
  std::size_t start_line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
      }
      --i;
      continue;
    }
    if (ch == '\n') {
      ++line;
    }
    if (trim(cur).empty() && !std::isspace(static_cast<unsigned char>(ch))) {
      start_line = line;
      cur.clear();
    }
    if (ch == ';') {
      out.push_back({std::string(trim(cur)), start_line});
      cur.clear();
      continue;
    }
    if (ch == '{') {
      // block constructs are never part of the subset; report them by their keyword
      out.push_back({std::string(trim(cur)) + " {", start_line});
      cur.clear();
      continue;
    }
    cur += ch;
  }
  if (!trim(cur).empty() && trim(cur) != "}") {
    throw parse_error("missing ';'", start_line);
  }
  return out;
}

} // namespace detail

/// Parses the supported OpenQASM 2.0 subset: one qreg, at most one creg,
/// gates h x z s t rz ry cx cz swap cp/cu1, and measure.
inline Circuit parse_qasm_subset(std::string_view text) {
  Circuit c;
  std::string qreg;
  std::string creg;
  bool header = false;

  const auto reg_index = [](std::string_view arg, const std::string& reg, std::size_t size,
                            std::size_t line) -> std::size_t {
    arg = detail::trim(arg);
    const auto lb = arg.find('[');
    const auto rb = arg.find(']');
    if (lb == std::string_view::npos || rb != arg.size() - 1 || lb == 0) {
      throw parse_error("expected indexed register reference, got '" + std::string(arg) + "'", line);
    }
    if (detail::trim(arg.substr(0, lb)) != reg) {
      throw parse_error("unknown register '" + std::string(arg.substr(0, lb)) + "'", line);
    }
    const auto idx = detail::parse_int<std::size_t>(detail::trim(arg.substr(lb + 1, rb - lb - 1)));
    if (!idx || *idx >= size) {
      throw parse_error("register index out of range in '" + std::string(arg) + "'", line);
    }
    return *idx;
  };

  for (const auto& st : detail::qasm_statements(text)) {
    const std::string_view s = st.text;
    const auto line = st.line;
    if (s.empty() || s == "}") {
      continue;
    }
    if (s.rfind("OPENQASM", 0) == 0) {
      if (detail::trim(s.substr(8)) != "2.0") {
        throw parse_error("unsupported: OpenQASM version other than 2.0", line);
      }
      header = true;
      continue;
    }
    if (s.rfind("include", 0) == 0) {
      continue;
    }
    if (s.rfind("gate ", 0) == 0 || s.rfind("opaque ", 0) == 0) {
      throw parse_error("unsupported: gate definitions", line);
    }
    if (s.rfind("if", 0) == 0) {
      throw parse_error("unsupported: classical control", line);
    }
    const auto reg_decl = [&](std::string_view rest, std::string& name) -> std::size_t {
      rest = detail::trim(rest);
      const auto lb = rest.find('[');
      const auto rb = rest.find(']');
      if (lb == std::string_view::npos || rb != rest.size() - 1) {
        throw parse_error("bad register declaration", line);
      }
      name = std::string(detail::trim(rest.substr(0, lb)));
      const auto n = detail::parse_int<std::size_t>(rest.substr(lb + 1, rb - lb - 1));
      if (!n || *n == 0) {
        throw parse_error("bad register size", line);
      }
      return *n;
    };
    if (s.rfind("qreg", 0) == 0) {
      if (!qreg.empty()) {
        throw parse_error("unsupported: more than one qreg", line);
      }
      c.num_qubits = reg_decl(s.substr(4), qreg);
      continue;
    }
    if (s.rfind("creg", 0) == 0) {
      if (!creg.empty()) {
        throw parse_error("unsupported: more than one creg", line);
      }
      c.num_cbits = reg_decl(s.substr(4), creg);
      continue;
    }
    if (s.rfind("measure", 0) == 0) {
      const auto arrow = s.find("->");
      if (arrow == std::string_view::npos || creg.empty()) {
        throw parse_error("measure needs '->' and a declared creg", line);
      }
      const auto q = reg_index(s.substr(7, arrow - 7), qreg, c.num_qubits, line);
      const auto b = reg_index(s.substr(arrow + 2), creg, c.num_cbits, line);
      c.add(gates::measure(static_cast<Qubit>(q), static_cast<ClassicalBit>(b)));
      continue;
    }

    // gate application: name[(expr)] args
    std::size_t name_end = 0;
    while (name_end < s.size() && (std::isalnum(static_cast<unsigned char>(s[name_end])) || s[name_end] == '_')) {
      ++name_end;
    }
    const std::string name(s.substr(0, name_end));
    std::string_view rest = s.substr(name_end);
    std::optional<double> param;
    rest = detail::trim(rest);
    if (!rest.empty() && rest.front() == '(') {
      const auto close = rest.rfind(')');
      if (close == std::string_view::npos) {
        throw parse_error("unbalanced parenthesis", line);
      }
      param = detail::AngleExpr(rest.substr(1, close - 1), line).eval();
      rest = rest.substr(close + 1);
    }
    static const std::vector<std::pair<std::string, GateKind>> table{
        {"h", GateKind::h},   {"x", GateKind::x},   {"z", GateKind::z},   {"s", GateKind::s},
        {"t", GateKind::t},   {"rz", GateKind::rz}, {"ry", GateKind::ry}, {"cx", GateKind::cx},
        {"CX", GateKind::cx}, {"cz", GateKind::cz}, {"swap", GateKind::swap}, {"cp", GateKind::cp},
        {"cu1", GateKind::cp}};
    std::optional<GateKind> kind;
    for (const auto& [n, k] : table) {
      if (n == name) {
        kind = k;
      }
    }
    if (!kind) {
      throw parse_error("unsupported: '" + (name.empty() ? std::string(s) : name) + "'", line);
    }
    if (qreg.empty()) {
      throw parse_error("gate before qreg declaration", line);
    }
    if (has_angle(*kind) != param.has_value()) {
      throw parse_error("wrong parameter list for '" + name + "'", line);
    }
    std::vector<std::string_view> args;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      args.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) {
        break;
      }
      rest = rest.substr(comma + 1);
    }
    if (args.size() != arity(*kind)) {
      throw parse_error("wrong operand count for '" + name + "'", line);
    }
    Gate g;
    g.kind = *kind;
    for (std::size_t k = 0; k < args.size(); ++k) {
      g.qubits[k] = static_cast<Qubit>(reg_index(args[k], qreg, c.num_qubits, line));
    }
    if (args.size() == 1) {
      g.qubits[1] = g.qubits[0];
    }
    if (g.two_qubit() && g.qubits[0] == g.qubits[1]) {
      throw parse_error("two-qubit gate with identical operands", line);
    }
    g.angle = param.value_or(0.0);
    c.add(g);
  }
  if (!header) {
    throw parse_error("missing 'OPENQASM 2.0' header");
  }
  if (qreg.empty()) {
    throw parse_error("missing qreg declaration");
  }
  return c;
}

/// Emits the circuit in the same subset. Fails on gates the subset cannot express.
inline std::string export_qasm(const Circuit& c) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(c.num_qubits) + "];\n";
  if (c.num_cbits > 0) {
    out += "creg c[" + std::to_string(c.num_cbits) + "];\n";
  }
  const auto ref = [](Qubit q) { return "q[" + std::to_string(q) + "]"; };
  for (const auto& g : c.gates) {
    if (g.conditioned() || g.kind == GateKind::epr) {
      throw invalid_argument_error("export_qasm: gate not expressible in the subset");
    }
    if (g.kind == GateKind::measure) {
      out += "measure " + ref(g.qubits[0]) + " -> c[" + std::to_string(g.cbit) + "];\n";
      continue;
    }
    out += mnemonic(g.kind);
    if (has_angle(g.kind)) {
      out += "(" + detail::format_double(g.angle) + ")";
    }
    out += " " + ref(g.qubits[0]);
    if (g.two_qubit()) {
      out += "," + ref(g.qubits[1]);
    }
    out += ";\n";
  }
  return out;
}

} // namespace dqcc

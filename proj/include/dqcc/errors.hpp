#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dqcc {

/// Base class of every error raised by the compiler.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class invalid_argument_error : public error {
public:
  using error::error;
};

/// Malformed textual input. `line()` is 1-based, 0 when unknown.
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t line = 0)
      : error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class validation_error : public error {
public:
  using error::error;
};

class config_error : public error {
public:
  using error::error;
};

class capacity_error : public error {
public:
  using error::error;
};

class scheduling_error : public error {
public:
  using error::error;
};

class routing_error : public error {
public:
  using error::error;
};

class oracle_scale_error : public error {
public:
  using error::error;
};

class equivalence_failure : public error {
public:
  using error::error;
};

} // namespace dqcc

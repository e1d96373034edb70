#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace profitmax {

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value outside the mathematical domain of an operation (probability
/// outside [0,1], negative weight, unknown node id, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A brute-force routine was asked to exceed its configured size cap.
class CapacityError : public std::length_error {
 public:
  CapacityError(const std::string& what, std::size_t cap)
      : std::length_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// An internal invariant broke, usually because an evaluator returned
/// inconsistent values.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace profitmax

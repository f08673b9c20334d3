#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relalg {

/// Caller misuse: mixed-algebra operands, undefined map entries, bad arguments.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid construction parameters (p < 3, q not a prime power, i == j, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mathematical domain violations such as inverting zero.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured size or search budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `position` is a byte offset for terms and a
/// 1-based line number for files.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Broken internal invariant (e.g. a pigeonhole pair that cannot exist).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace relalg

#pragma once

#include <stdexcept>
#include <string>

namespace pnfield {

// Argument outside the mathematical domain of an operation (e.g. the
// multiplicative order of zero).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller-supplied data failed a structural check (reducible modulus,
// malformed factorization, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds an enumeration budget or exact-integer range.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text input (field spec, element, polynomial, range) could not be parsed.
class UsageError : public std::invalid_argument {
 public:
  UsageError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " +
                              std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// An internal consistency check failed; indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pnfield

#pragma once

#include <stdexcept>
#include <string>

namespace dfp {

// Violated precondition or invariant on a library call (bad dimensions,
// out-of-range parameters, mismatched representations).
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// An exact computation was requested but the problem size exceeds the
// configured enumeration budget and no sampling fallback is available.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent run configuration (file- or JSON-level).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dfp

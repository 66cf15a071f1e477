#pragma once

#include <stdexcept>
#include <string>

namespace lot {

/// Malformed or inconsistent caller input (bad ids, bad weights, bad documents).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A brute-force oracle was asked to exceed its hard enumeration bound.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// The model lacks the structure an operation requires (e.g. a cyclic model
/// passed to topological_order).
class UnsupportedModelError : public std::runtime_error {
 public:
  explicit UnsupportedModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lot

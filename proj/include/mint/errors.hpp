#pragma once

#include <stdexcept>
#include <string>

namespace mint {

// The caller handed an operation something outside its contract.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive search was requested above its configured bound.
struct CapacityError : std::runtime_error {
  CapacityError(const std::string& what, int bound_arg)
      : std::runtime_error(what), bound(bound_arg) {}
  int bound;
};

// A run-time assertion backed by a theorem failed. Always a bug somewhere.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mint

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zslen {

// Base for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition (bad descriptor, wrong group,
// parameter out of range).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A configured search limit (nodes, memo bytes, element count) was hit.
// No partial result accompanies this error.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t consumed)
      : Error(what), consumed_(consumed) {}

  std::uint64_t consumed() const noexcept { return consumed_; }

 private:
  std::uint64_t consumed_ = 0;
};

// Corrupt, stale or mismatched atom cache file.
class CacheError : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed. Indicates a bug, never bad user input.
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace zslen

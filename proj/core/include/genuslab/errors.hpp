#pragma once

#include <stdexcept>
#include <string>

namespace genuslab {

/// A computed quantity broke an exact identity (e.g. a genus number came out
/// non-integral). Always an implementation bug, never bad input.
class InvariantViolation : public std::logic_error {
  public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// A configured resource bound (modulus range, record count, deadline) was hit.
class ResourceLimitExceeded : public std::runtime_error {
  public:
    explicit ResourceLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace genuslab

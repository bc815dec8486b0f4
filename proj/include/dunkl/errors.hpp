#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

/// Invalid group type, size, multiplicity or CLI input.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

/// Group closure (or similar enumeration) exceeded its configured cap.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& m) : std::runtime_error(m) {}
};

/// A caller-visible precondition failed, e.g. nonzero remainder in the
/// division by a linear form.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& m) : std::runtime_error(m) {}
};

/// Kernel series truncation cannot reach the requested accuracy.
struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& m) : std::runtime_error(m) {}
};

/// A linear system that is solvable for every k >= 0 came out singular;
/// reaching this signals a construction bug, not a user error.
struct RegularityError : std::runtime_error {
  explicit RegularityError(const std::string& m) : std::runtime_error(m) {}
};

/// Quadrature request outside the supported rank/dimension range.
struct UnsupportedDimensionError : std::runtime_error {
  explicit UnsupportedDimensionError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace dunkl

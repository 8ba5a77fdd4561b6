#pragma once

#include <stdexcept>
#include <string>

namespace filldist {

/// Caller passed a parameter outside its documented domain (n < 3,
/// p outside [0,1], dim < 2, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A 1-cycle has no filling by 2-faces of the complex.
class HomologyObstruction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An embedding maps some 2-face of the complex to a degenerate
/// (zero-area) triangle.
class DegenerateEmbedding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edge of the complete 1-skeleton lies in no 2-face, so degree
/// normalization is undefined.
class DegenerateDegree : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The up-down spectral gap vanishes, so spectral certificates are
/// unavailable.
class ZeroSpectralGap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem or serialization failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace filldist

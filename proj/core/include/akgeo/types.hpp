#pragma once

#include <compare>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace akgeo {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Residual thresholds shared across the library.
namespace tol {
/// Coefficients below this magnitude are dropped when a form is normalized.
inline constexpr double kPrune = 1e-13;
/// Frame-level algebra: J^2 = -I, compatibility, frame round trips.
inline constexpr double kFrame = 1e-12;
/// Connection identities: metric compatibility, parallel J, skew-Hermitian forms.
inline constexpr double kConnection = 1e-10;
/// Composite round trips through two or three layers of computation.
inline constexpr double kComposite = 1e-9;
/// Smallest admissible metric eigenvalue.
inline constexpr double kPositiveDefinite = 1e-10;
}  // namespace tol

/// Identifies the (co)frame a set of coefficients refers to.
struct FrameTag {
  std::string name;

  FrameTag() = default;
  explicit FrameTag(std::string n) : name(std::move(n)) {}

  bool operator==(const FrameTag&) const = default;
  auto operator<=>(const FrameTag&) const = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched sizes or out-of-range indices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands expressed in different frames with no registered change between them.
class FrameMismatch : public Error {
 public:
  using Error::Error;
};

/// An invariant failed; carries the offending residual.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Parameters outside the admissible domain of a family.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations disagreed; always an implementation bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace akgeo

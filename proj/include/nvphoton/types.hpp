#ifndef NVPHOTON_TYPES_HPP
#define NVPHOTON_TYPES_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nvphoton {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using MatrixX = Eigen::MatrixXcd;
using Vector2 = Eigen::Vector2cd;
using VectorX = Eigen::VectorXcd;

// Algebraic identities (norms, involutions) hold to this bound.
inline constexpr double kAlgebraTol = 1e-12;
// Matrix property checks: unitarity, Hermiticity, idempotence, trace.
inline constexpr double kMatrixTol = 1e-10;
// Smallest eigenvalue admitted for a positive semidefinite matrix.
inline constexpr double kPsdFloor = -1e-9;
// Projection outcomes below this probability are treated as forbidden.
inline constexpr double kForbiddenBranch = 1e-14;

/// Raised when an internal protocol invariant is broken. This always
/// indicates a logic bug, never bad user input.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace nvphoton

#endif  // NVPHOTON_TYPES_HPP

#pragma once

// Dense matrix engine: Hermitian eigendecomposition, spectral calculus and
// Schatten norms. Real-linear operators are stored as their complex-linear
// extensions, so every trace and norm is taken over the complexified space.

#include <complex>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "gaussmod/error.hpp"

namespace gaussmod {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

namespace matops {

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// as the columns of `vectors`.
struct HermitianEigenSystem {
  RVector values;
  CMatrix vectors;

  /// V·diag(λ)·V*
  CMatrix reconstruct() const;
  Eigen::Index size() const { return values.size(); }
};

/// Relative tolerance on ‖A − A*‖ accepted as "Hermitian" by hermitian_eig.
inline constexpr double kHermitianTol = 1e-9;
/// Default guard band around singular points of spectral functions.
inline constexpr double kDefaultGuard = 1e-12;

HermitianEigenSystem hermitian_eig(const CMatrix& a);

// A scalar map's domain is the open interval (lower, upper), optionally with
// zero removed. Finite endpoints are singular points.
struct Domain {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool excludes_zero = false;
};

struct ScalarMap {
  std::string name;
  std::function<Complex(double)> fn;
  Domain domain;

  static ScalarMap real(std::string name, std::function<double(double)> f, Domain domain = {});
};

namespace maps {
ScalarMap identity();
ScalarMap square();
ScalarMap exp();
ScalarMap log();
ScalarMap tanh();
ScalarMap artanh();
ScalarMap reciprocal();
/// x ↦ sqrt(x) on (0, ∞); use sqrt_psd for semidefinite inputs.
ScalarMap sqrt();
}  // namespace maps

enum class DomainMode { Strict, Clamp };

struct SpectralOptions {
  double guard = kDefaultGuard;
  DomainMode mode = DomainMode::Strict;
};

/// Applies `f` eigenvalue-wise: V·diag(f(λ))·V*. Eigenvalues within the guard
/// band of a singular point raise DomainViolation unless mode is Clamp, in
/// which case they are moved onto the edge of the band.
CMatrix matrix_function(const HermitianEigenSystem& eig, const ScalarMap& f,
                        const SpectralOptions& options = {});
CMatrix matrix_function(const CMatrix& a, const ScalarMap& f, const SpectralOptions& options = {});

/// Positive square root of a positive semidefinite matrix. Eigenvalues in
/// [-1e-10·‖A‖, 0] are clamped to zero; anything lower is NotPSD.
CMatrix sqrt_psd(const CMatrix& a);
CMatrix sqrt_psd(const HermitianEigenSystem& eig);

enum class SchattenP { One, Two, Inf };

std::string to_string(SchattenP p);

/// Schatten p-norm for p ∈ {1, 2, ∞}.
double schatten_norm(const CMatrix& a, SchattenP p);

/// Singular values in ascending order.
RVector singular_values(const CMatrix& a);

Complex trace(const CMatrix& a);

/// General square inverse (LU with partial pivoting).
CMatrix inverse(const CMatrix& a);

CMatrix complexify(const RMatrix& a);
CMatrix identity(Eigen::Index n);

/// Largest absolute entry.
double max_abs(const CMatrix& a);

void require_square(const CMatrix& a, const char* what);
void require_finite(const CMatrix& a, const char* what);
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what);

}  // namespace matops
}  // namespace gaussmod

#include "gaussmod/matops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gaussmod::matops {

namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Detection threshold for the (anti-)Hermitian shortcut in singular_values.
constexpr double kNormalTol = 1e-13;

// Returns the value to use for `x` or throws; `boundary` is the singular point.
double guard_point(double x, double boundary, bool below_is_inside, const ScalarMap& f,
                   const SpectralOptions& options) {
  const double signed_gap = below_is_inside ? boundary - x : x - boundary;
  if (signed_gap > options.guard) return x;
  if (options.mode == DomainMode::Clamp && signed_gap > -options.guard) {
    return below_is_inside ? boundary - options.guard : boundary + options.guard;
  }
  throw Error(ErrorKind::DomainViolation, "eigenvalue " + fmt_double(x) + " of " + f.name +
                                              " argument violates boundary " +
                                              fmt_double(boundary));
}

double check_domain(double x, const ScalarMap& f, const SpectralOptions& options) {
  const Domain& d = f.domain;
  if (std::isfinite(d.lower)) x = guard_point(x, d.lower, false, f, options);
  if (std::isfinite(d.upper)) x = guard_point(x, d.upper, true, f, options);
  if (d.excludes_zero && std::abs(x) <= options.guard) {
    if (options.mode == DomainMode::Clamp) {
      x = std::signbit(x) ? -options.guard : options.guard;
    } else {
      throw Error(ErrorKind::DomainViolation,
                  "eigenvalue " + fmt_double(x) + " of " + f.name + " argument violates boundary 0");
    }
  }
  return x;
}

}  // namespace

CMatrix HermitianEigenSystem::reconstruct() const {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::NonSquare, std::string(what) + ": matrix is " + std::to_string(a.rows()) +
                                          "x" + std::to_string(a.cols()));
  }
}

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + ": non-finite entry");
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": shapes differ");
  }
}

HermitianEigenSystem hermitian_eig(const CMatrix& a) {
  require_square(a, "hermitian_eig");
  require_finite(a, "hermitian_eig");
  const double asym = (a - a.adjoint()).norm();
  if (asym > kHermitianTol * std::max(1.0, a.norm())) {
    throw Error(ErrorKind::NonHermitian, "hermitian_eig: ‖A − A*‖_F = " + fmt_double(asym));
  }
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ScalarMap ScalarMap::real(std::string name, std::function<double(double)> f, Domain domain) {
  return {std::move(name), [f = std::move(f)](double x) { return Complex(f(x), 0.0); }, domain};
}

namespace maps {

ScalarMap identity() { return ScalarMap::real("identity", [](double x) { return x; }); }
ScalarMap square() { return ScalarMap::real("square", [](double x) { return x * x; }); }
ScalarMap exp() { return ScalarMap::real("exp", [](double x) { return std::exp(x); }); }
ScalarMap log() {
  return ScalarMap::real("log", [](double x) { return std::log(x); }, {0.0, Domain{}.upper, false});
}
ScalarMap tanh() { return ScalarMap::real("tanh", [](double x) { return std::tanh(x); }); }
ScalarMap artanh() {
  return ScalarMap::real("artanh", [](double x) { return std::atanh(x); }, {-1.0, 1.0, false});
}
ScalarMap reciprocal() {
  Domain d;
  d.excludes_zero = true;
  return ScalarMap::real("reciprocal", [](double x) { return 1.0 / x; }, d);
}
ScalarMap sqrt() {
  return ScalarMap::real("sqrt", [](double x) { return std::sqrt(x); }, {0.0, Domain{}.upper, false});
}

}  // namespace maps

CMatrix matrix_function(const HermitianEigenSystem& eig, const ScalarMap& f,
                        const SpectralOptions& options) {
  CVector fvals(eig.size());
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    fvals(i) = f.fn(check_domain(eig.values(i), f, options));
  }
  return eig.vectors * fvals.asDiagonal() * eig.vectors.adjoint();
}

CMatrix matrix_function(const CMatrix& a, const ScalarMap& f, const SpectralOptions& options) {
  return matrix_function(hermitian_eig(a), f, options);
}

CMatrix sqrt_psd(const HermitianEigenSystem& eig) {
  if (eig.size() == 0) return CMatrix(0, 0);
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const double ctol = 1e-10 * scale;
  RVector roots(eig.size());
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    const double lambda = eig.values(i);
    if (lambda < -ctol) {
      throw Error(ErrorKind::NotPSD, "sqrt_psd: eigenvalue " + fmt_double(lambda));
    }
    roots(i) = std::sqrt(std::max(lambda, 0.0));
  }
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

CMatrix sqrt_psd(const CMatrix& a) { return sqrt_psd(hermitian_eig(a)); }

std::string to_string(SchattenP p) {
  switch (p) {
    case SchattenP::One: return "1";
    case SchattenP::Two: return "2";
    case SchattenP::Inf: return "inf";
  }
  return "?";
}

RVector singular_values(const CMatrix& a) {
  require_square(a, "singular_values");
  require_finite(a, "singular_values");
  const double scale = a.norm();
  // (Anti-)Hermitian matrices: singular values are |eigenvalues|. Otherwise a
  // divide-and-conquer SVD; eig(A*A) would lose the small singular values.
  RVector sv;
  if ((a - a.adjoint()).norm() <= kNormalTol * scale) {
    sv = hermitian_eig(a).values.cwiseAbs();
  } else if ((a + a.adjoint()).norm() <= kNormalTol * scale) {
    sv = hermitian_eig(Complex(0.0, 1.0) * a).values.cwiseAbs();
  } else {
    sv = Eigen::BDCSVD<CMatrix>(a).singularValues();
  }
  std::sort(sv.data(), sv.data() + sv.size());
  return sv;
}

double schatten_norm(const CMatrix& a, SchattenP p) {
  require_square(a, "schatten_norm");
  if (a.size() == 0) return 0.0;
  switch (p) {
    case SchattenP::Two:
      require_finite(a, "schatten_norm");
      return a.norm();  // Frobenius, identical to the ℓ² norm of singular values
    case SchattenP::One: return singular_values(a).sum();
    case SchattenP::Inf: return singular_values(a).maxCoeff();
  }
  return 0.0;
}

Complex trace(const CMatrix& a) {
  require_square(a, "trace");
  return a.trace();
}

CMatrix inverse(const CMatrix& a) {
  require_square(a, "inverse");
  require_finite(a, "inverse");
  Eigen::FullPivLU<CMatrix> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorKind::DomainViolation, "inverse: matrix is singular");
  return lu.inverse();
}

CMatrix complexify(const RMatrix& a) { return a.cast<Complex>(); }

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace gaussmod::matops

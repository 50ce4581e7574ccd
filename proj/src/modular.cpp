#include "gaussmod/modular.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace gaussmod {

using matops::HermitianEigenSystem;

namespace {

constexpr double kSeriesCutoff = 1e-4;
// |κ| below this is treated as part of the kernel of Σ by tomita_verify.
constexpr double kKernelK = 1e-9;

// 2·artanh(t)/t with t = √(1 − s); s = 1 − t² is the defect eigenvalue.
double artanh_ratio(double s) {
  const double t = std::sqrt(std::max(0.0, 1.0 - s));
  if (t < kSeriesCutoff) {
    const double t2 = t * t;
    return 2.0 * (1.0 + t2 / 3.0 + t2 * t2 / 5.0);
  }
  return 2.0 * (std::log1p(t) - 0.5 * std::log(s)) / t;
}

CMatrix diag_conj(const CMatrix& v, const RVector& d) {
  return v * d.cast<Complex>().asDiagonal() * v.adjoint();
}

double min_defect(const CanonicalPolarisation& pol) {
  return pol.dim() ? pol.defect_eig().values(0) : 1.0;
}

void require_standard(const CanonicalPolarisation& pol, double eps, const char* what) {
  const CheckResult check = standardness_check(pol, eps);
  if (!check.ok) {
    throw Error(ErrorKind::NotStandard,
                std::string(what) + ": standardness margin " + std::to_string(check.margin));
  }
}

}  // namespace

CheckResult standardness_check(const CanonicalPolarisation& pol, double eps) {
  // 1 − ‖Σ‖ = s/(1 + √(1 − s)) with s the smallest eigenvalue of 1 − Σ².
  const double s = min_defect(pol);
  const double margin = s / (1.0 + std::sqrt(std::max(0.0, 1.0 - s)));
  return {margin > eps, margin};
}

CheckResult factorial_check(const CanonicalPolarisation& pol, double eps) {
  if (pol.dim() == 0) return {true, 1.0};
  const double margin = pol.sigma_eig().values.cwiseAbs().minCoeff();
  return {margin > eps, margin};
}

CMatrix ModularData::hamiltonian() const { return diag_conj(eigenvectors, k_eigs); }

CMatrix ModularData::modular_operator() const { return diag_conj(eigenvectors, delta_eigs); }

CMatrix ModularData::function_of_k(const std::function<Complex(double)>& f) const {
  CVector vals(k_eigs.size());
  for (Eigen::Index i = 0; i < k_eigs.size(); ++i) vals(i) = f(k_eigs(i));
  return eigenvectors * vals.asDiagonal() * eigenvectors.adjoint();
}

ModularData modular_operator(const CanonicalPolarisation& pol, double eps) {
  require_standard(pol, eps, "modular_operator");
  const HermitianEigenSystem& c = pol.defect_eig();
  RVector ratio(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) ratio(i) = artanh_ratio(c.values(i));
  // K = 2 artanh Σ = Σ·g(1 − Σ²); Σ and the defect commute.
  CMatrix k = pol.sigma() * diag_conj(c.vectors, ratio);
  k = 0.5 * (k + k.adjoint()).eval();
  HermitianEigenSystem keig = matops::hermitian_eig(k);

  ModularData out;
  out.sigma = pol.sigma();
  out.k_eigs = keig.values;
  out.delta_eigs = (-keig.values.array()).exp().matrix();
  out.eigenvectors = std::move(keig.vectors);
  return out;
}

ModularData modular_hamiltonian(const CanonicalPolarisation& pol, double eps) {
  ModularData out = modular_operator(pol, eps);
  const HermitianEigenSystem& s = pol.sigma_eig();
  RVector log_path(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double x = std::clamp(s.values(i), -1.0 + 1e-300, 1.0 - 1e-16);
    log_path(i) = -std::log((1.0 - x) / (1.0 + x));
  }
  const CMatrix k = out.hamiltonian();
  const double scale = std::max(1.0, matops::schatten_norm(k, matops::SchattenP::Inf));
  out.path_residual =
      matops::schatten_norm(k - diag_conj(s.vectors, log_path), matops::SchattenP::Inf) / scale;
  return out;
}

const CMatrix& ModularFunctions::coth_half() const {
  if (!coth_) throw Error(ErrorKind::NotFactorial, "coth(K/2): Sigma has a zero eigenvalue");
  return *coth_;
}

const CMatrix& ModularFunctions::csch_half() const {
  if (!csch_) throw Error(ErrorKind::NotFactorial, "csch(K/2): Sigma has a zero eigenvalue");
  return *csch_;
}

ModularFunctions modular_functions(const ModularData& data, bool factorial) {
  ModularFunctions out;
  out.tanh_half = data.function_of_k([](double k) { return Complex(std::tanh(0.5 * k)); });
  out.sech_half = data.function_of_k([](double k) { return Complex(1.0 / std::cosh(0.5 * k)); });
  if (factorial) {
    out.coth_ = data.function_of_k([](double k) { return Complex(1.0 / std::tanh(0.5 * k)); });
    out.csch_ = data.function_of_k([](double k) { return Complex(1.0 / std::sinh(0.5 * k)); });
  }
  return out;
}

ModularFunctions modular_functions(const CanonicalPolarisation& pol, const ModularOptions& options) {
  const ModularData data = modular_operator(pol, options.standard_eps);
  return modular_functions(data, factorial_check(pol, options.factorial_eps).ok);
}

TomitaResult tomita_verify(const CanonicalPolarisation& pol, int trials, std::uint64_t seed, double eps) {
  if (trials < 0) throw Error(ErrorKind::InvalidArgument, "tomita_verify: negative trial count");
  const ModularData data = modular_operator(pol, eps);
  const Eigen::Index n = pol.dim();
  TomitaResult result;
  if (n == 0) return result;

  // Basis [U, Ū, Q]: U spans κ > 0, Ū spans −κ (ΓKΓ = −K), Q is a real basis
  // of the kernel. Γ maps coefficients (a, b, q) to (b̄, ā, q̄).
  std::vector<Eigen::Index> pos, zero;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double k = data.k_eigs(i);
    if (k > kKernelK) pos.push_back(i);
    else if (std::abs(k) <= kKernelK) zero.push_back(i);
  }
  const auto np = static_cast<Eigen::Index>(pos.size());
  const auto nz = static_cast<Eigen::Index>(zero.size());
  if (2 * np + nz != n) {
    throw Error(ErrorKind::DomainViolation, "tomita_verify: K spectrum is not symmetric");
  }
  CMatrix basis(n, n);
  RVector kappa(n);
  for (Eigen::Index j = 0; j < np; ++j) {
    basis.col(j) = data.eigenvectors.col(pos[j]);
    basis.col(np + j) = data.eigenvectors.col(pos[j]).conjugate();
    kappa(j) = data.k_eigs(pos[j]);
    kappa(np + j) = -data.k_eigs(pos[j]);
  }
  if (nz > 0) {
    RMatrix parts(n, 2 * nz);
    for (Eigen::Index j = 0; j < nz; ++j) {
      parts.col(j) = data.eigenvectors.col(zero[j]).real();
      parts.col(nz + j) = data.eigenvectors.col(zero[j]).imag();
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(parts * parts.transpose());
    basis.rightCols(nz) = solver.eigenvectors().rightCols(nz).cast<Complex>();
    kappa.tail(nz).setZero();
  }

  auto swap_conj = [np, nz](const CVector& c) {
    CVector out(c.size());
    out.head(np) = c.segment(np, np).conjugate();
    out.segment(np, np) = c.head(np).conjugate();
    out.tail(nz) = c.tail(nz).conjugate();
    return out;
  };
  // κ = √(1 + Σ) with Σ = tanh(K/2): 1 + tanh(k/2) = 2/(1 + e^{−k}).
  RVector one_particle(n), half_inv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    one_particle(i) = std::sqrt(2.0 / (1.0 + std::exp(-kappa(i))));
    half_inv(i) = std::exp(0.5 * kappa(i));
  }

  RVector tanh_k = kappa.unaryExpr([](double k) { return std::tanh(0.5 * k); });
  const double sigma_err = matops::max_abs(diag_conj(basis, tanh_k) - pol.sigma());
  const double ortho_err = matops::max_abs(basis.adjoint() * basis - matops::identity(n));
  result.basis_residual = std::max(sigma_err, ortho_err);

  // Γ Δ^{1/2} Γ against Δ^{-1/2}, both assembled from the paired basis.
  const RVector half = half_inv.cwiseInverse();
  const CMatrix delta_half = diag_conj(basis, half);
  const CMatrix delta_neg_half = diag_conj(basis, half_inv);
  result.conjugation_residual = matops::max_abs(delta_half.conjugate() - delta_neg_half) /
                                std::max(1.0, matops::max_abs(delta_neg_half));

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  const CMatrix basis_adj = basis.adjoint();
  for (int t = 0; t < trials; ++t) {
    RVector v(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(gen);
    for (Eigen::Index i = 0; i < n; ++i) w(i) = normal(gen);
    const CVector cv = basis_adj * v.cast<Complex>();
    const CVector cw = basis_adj * w.cast<Complex>();
    const CVector kv = one_particle.cast<Complex>().cwiseProduct(cv);
    const CVector kw = one_particle.cast<Complex>().cwiseProduct(cw);
    const CVector x = kv + Complex(0.0, 1.0) * kw;
    const CVector sx = half_inv.cast<Complex>().cwiseProduct(swap_conj(x));
    const CVector expected =
        one_particle.cast<Complex>().cwiseProduct(swap_conj(cv + Complex(0.0, 1.0) * cw));
    const double denom = (basis * kv).norm() + (basis * kw).norm();
    if (denom == 0.0) continue;
    result.max_residual = std::max(result.max_residual, (basis * (sx - expected)).norm() / denom);
  }
  return result;
}

}  // namespace gaussmod

#include "gaussmod/gaussian.hpp"

#include <cmath>
#include <string>

namespace gaussmod {

using matops::HermitianEigenSystem;

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kDominationTol = 1e-10;
constexpr double kPositivityTol = 1e-10;

RMatrix spectral_real(const HermitianEigenSystem& eig, double (*f)(double)) {
  RVector vals(eig.size());
  for (Eigen::Index i = 0; i < eig.size(); ++i) vals(i) = f(eig.values(i));
  return (eig.vectors * vals.cast<Complex>().asDiagonal() * eig.vectors.adjoint()).real();
}

double sigma_norm(const HermitianEigenSystem& eig) {
  return eig.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

PreSymplecticSpace::PreSymplecticSpace(RMatrix sigma) : sigma_(std::move(sigma)) {
  matops::require_square(matops::complexify(sigma_), "PreSymplecticSpace");
  if (!sigma_.allFinite()) throw Error(ErrorKind::NonFinite, "PreSymplecticSpace: sigma");
  if (sigma_ != -sigma_.transpose()) {
    throw Error(ErrorKind::InvalidArgument, "PreSymplecticSpace: sigma is not antisymmetric");
  }
}

GaussianStateForm::GaussianStateForm(PreSymplecticSpace space, RMatrix mu)
    : space_(std::move(space)), mu_(std::move(mu)) {
  if (mu_.rows() != mu_.cols()) throw Error(ErrorKind::NonSquare, "GaussianStateForm: mu");
  if (mu_.rows() != space_.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "GaussianStateForm: mu and sigma sizes differ");
  }
  if (!mu_.allFinite()) throw Error(ErrorKind::NonFinite, "GaussianStateForm: mu");
  const double scale = std::max(1.0, mu_.cwiseAbs().maxCoeff());
  if ((mu_ - mu_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw Error(ErrorKind::InvalidArgument, "GaussianStateForm: mu is not symmetric");
  }
  mu_ = 0.5 * (mu_ + mu_.transpose());
  mu_eig_ = matops::hermitian_eig(matops::complexify(mu_));
  if (mu_eig_.size() > 0 && !(mu_eig_.values(0) > 0.0)) {
    throw Error(ErrorKind::NotPositive, "GaussianStateForm: mu is not positive definite");
  }
}

RMatrix GaussianStateForm::mu_sqrt() const {
  return spectral_real(mu_eig_, [](double x) { return std::sqrt(x); });
}

RMatrix GaussianStateForm::mu_inv_sqrt() const {
  return spectral_real(mu_eig_, [](double x) { return 1.0 / std::sqrt(x); });
}

CanonicalPolarisation::CanonicalPolarisation(RMatrix r, RMatrix defect)
    : r_(std::move(r)), defect_(std::move(defect)) {
  sigma_ = Complex(0.0, 1.0) * matops::complexify(r_);
  sigma_eig_ = matops::hermitian_eig(sigma_);
  defect_eig_ = matops::hermitian_eig(matops::complexify(defect_));
  if (sigma_norm(sigma_eig_) > 1.0 + kDominationTol) {
    throw Error(ErrorKind::DominationFailure,
                "polarisation has ‖Σ‖ = " + std::to_string(sigma_norm(sigma_eig_)) + " > 1");
  }
}

CanonicalPolarisation CanonicalPolarisation::with_defect(const RMatrix& r, const RMatrix& defect) {
  if (r.rows() != r.cols()) throw Error(ErrorKind::NonSquare, "CanonicalPolarisation: R");
  if (defect.rows() != r.rows() || defect.cols() != r.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "CanonicalPolarisation: defect size");
  }
  if (!r.allFinite() || !defect.allFinite()) {
    throw Error(ErrorKind::NonFinite, "CanonicalPolarisation");
  }
  if (r.size() > 0 && (r + r.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw Error(ErrorKind::InvalidArgument, "CanonicalPolarisation: R is not antisymmetric");
  }
  RMatrix anti = 0.5 * (r - r.transpose());
  RMatrix sym = 0.5 * (defect + defect.transpose());
  return CanonicalPolarisation(std::move(anti), std::move(sym));
}

CanonicalPolarisation CanonicalPolarisation::from_matrix(const RMatrix& r) {
  const RMatrix anti = 0.5 * (r - r.transpose());
  return with_defect(r, RMatrix::Identity(r.rows(), r.cols()) + anti * anti);
}

double CanonicalPolarisation::norm() const { return sigma_norm(sigma_eig_); }

Perturbation::Perturbation(RMatrix delta, PositivityClass cls) : delta_(std::move(delta)), class_(cls) {
  if (delta_.rows() != delta_.cols()) throw Error(ErrorKind::NonSquare, "Perturbation");
  if (!delta_.allFinite()) throw Error(ErrorKind::NonFinite, "Perturbation");
  const double scale = delta_.size() ? std::max(1.0, delta_.cwiseAbs().maxCoeff()) : 1.0;
  if (delta_.size() && (delta_ - delta_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw Error(ErrorKind::InvalidArgument, "Perturbation: delta is not symmetric");
  }
  delta_ = 0.5 * (delta_ + delta_.transpose());
  eig_ = matops::hermitian_eig(matops::complexify(delta_));
  const double lo = min_eigenvalue();
  if (class_ == PositivityClass::PSD && lo < -kPositivityTol) {
    throw Error(ErrorKind::NotPositive, "Perturbation: delta has eigenvalue " + std::to_string(lo));
  }
  if (class_ == PositivityClass::InvertiblePlusOne && 1.0 + lo < kPositivityTol) {
    throw Error(ErrorKind::NotPositive, "Perturbation: 1 + delta is not strictly positive");
  }
}

Perturbation Perturbation::zero(Eigen::Index dim) { return Perturbation(RMatrix::Zero(dim, dim)); }

CanonicalPolarisation polarisation_canonical(const GaussianStateForm& state) {
  const RMatrix w = state.mu_inv_sqrt();
  return CanonicalPolarisation::from_matrix(w * state.space().sigma() * w);
}

CanonicalPolarisation perturb(const CanonicalPolarisation& base, const Perturbation& delta) {
  if (delta.dim() != base.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "perturb: delta and polarisation sizes differ");
  }
  const HermitianEigenSystem& eig = delta.eig();
  if (eig.size() > 0 && 1.0 + eig.values(0) < kPositivityTol) {
    throw Error(ErrorKind::NotPositive, "perturb: 1 + delta is not strictly positive");
  }
  if (delta.positivity_class() == PositivityClass::InvertiblePlusOne) {
    const CMatrix shifted =
        matops::identity(base.dim()) + matops::complexify(delta.delta()) + base.sigma();
    const double lo = matops::hermitian_eig(shifted).values(0);
    if (lo < -kDominationTol) {
      throw Error(ErrorKind::DominationFailure,
                  "perturb: 1 + delta + Sigma0 has eigenvalue " + std::to_string(lo));
    }
  }
  const RMatrix d = spectral_real(eig, [](double x) { return 1.0 / std::sqrt(1.0 + x); });
  const RMatrix damped = spectral_real(eig, [](double x) { return x / (1.0 + x); });
  const RMatrix& r0 = base.r();
  RMatrix r = d * r0 * d;
  // 1 + R_δ² = D((1 + R₀²) + δ − R₀ δ(1+δ)^{-1} R₀)D, free of the 1 − 1 cancellation.
  RMatrix inner = base.defect() + delta.delta() - r0 * damped * r0;
  RMatrix defect = d * inner * d;
  r = 0.5 * (r - r.transpose());
  return CanonicalPolarisation::with_defect(r, defect);
}

CanonicalPolarisation perturb(const GaussianStateForm& base, const Perturbation& delta) {
  return perturb(polarisation_canonical(base), delta);
}

OneParticleStructure one_particle_map(const CanonicalPolarisation& pol) {
  const HermitianEigenSystem& eig = pol.sigma_eig();
  HermitianEigenSystem shifted{eig.values.array() + 1.0, eig.vectors};
  OneParticleStructure out;
  out.kappa = matops::sqrt_psd(shifted);
  for (Eigen::Index i = 0; i < shifted.size(); ++i) {
    if (shifted.values(i) < 1e-10) ++out.kernel_dim;
  }
  return out;
}

CMatrix two_point(const GaussianStateForm& state) {
  return 0.5 * (matops::complexify(state.mu()) +
                Complex(0.0, 1.0) * matops::complexify(state.space().sigma()));
}

double domination_margin(const GaussianStateForm& state) {
  const RMatrix w = state.mu_inv_sqrt();
  RMatrix r = w * state.space().sigma() * w;
  r = 0.5 * (r - r.transpose());
  const CMatrix sigma = Complex(0.0, 1.0) * matops::complexify(r);
  return 1.0 - sigma_norm(matops::hermitian_eig(sigma));
}

Perturbation perturbation_from_forms(const GaussianStateForm& base, const RMatrix& mu_delta,
                                     PositivityClass cls) {
  if (mu_delta.rows() != base.dim() || mu_delta.cols() != base.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "perturbation_from_forms");
  }
  const RMatrix w = base.mu_inv_sqrt();
  RMatrix delta = w * mu_delta * w - RMatrix::Identity(base.dim(), base.dim());
  return Perturbation(0.5 * (delta + delta.transpose()), cls);
}

Perturbation perturbation_from_raw(const GaussianStateForm& base, const RMatrix& raw_delta,
                                   PositivityClass cls) {
  if (raw_delta.rows() != base.dim() || raw_delta.cols() != base.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "perturbation_from_raw");
  }
  const RMatrix w = base.mu_inv_sqrt();
  RMatrix delta = w * raw_delta * w;
  return Perturbation(0.5 * (delta + delta.transpose()), cls);
}

}  // namespace gaussmod

#pragma once

// Pre-symplectic spaces, Gaussian state forms and their polarisation
// operators. After construction everything lives in μ-orthonormal
// ("canonical") coordinates, where R is antisymmetric and Σ = iR Hermitian.

#include "gaussmod/matops.hpp"

namespace gaussmod {

/// A real vector space of dimension M with an antisymmetric bilinear form σ,
/// possibly degenerate.
class PreSymplecticSpace {
 public:
  explicit PreSymplecticSpace(RMatrix sigma);

  Eigen::Index dim() const { return sigma_.rows(); }
  const RMatrix& sigma() const { return sigma_; }

 private:
  RMatrix sigma_;
};

/// Real inner product μ on a pre-symplectic space. Domination of σ by μ is
/// not required here; polarisation_canonical and domination_margin check it.
class GaussianStateForm {
 public:
  GaussianStateForm(PreSymplecticSpace space, RMatrix mu);

  const PreSymplecticSpace& space() const { return space_; }
  const RMatrix& mu() const { return mu_; }
  Eigen::Index dim() const { return mu_.rows(); }

  /// μ^{1/2} maps raw vectors to canonical coordinates; forms transport
  /// with μ^{-1/2} on both sides.
  RMatrix mu_sqrt() const;
  RMatrix mu_inv_sqrt() const;

 private:
  PreSymplecticSpace space_;
  RMatrix mu_;
  matops::HermitianEigenSystem mu_eig_;
};

/// Polarisation operator R in canonical coordinates together with its
/// Hermitian extension Σ = iR and the defect 1 + R² = 1 − Σ².
///
/// The defect is carried explicitly because 1 + R·R cancels catastrophically
/// for nearly pure states; perturb() builds it from δ without forming 1 + R·R.
class CanonicalPolarisation {
 public:
  /// Validates antisymmetry (1e-12) and ‖Σ‖ ≤ 1 + 1e-10.
  static CanonicalPolarisation from_matrix(const RMatrix& r);
  /// As from_matrix, with a caller-supplied defect equal to 1 + R·R.
  static CanonicalPolarisation with_defect(const RMatrix& r, const RMatrix& defect);

  Eigen::Index dim() const { return r_.rows(); }
  const RMatrix& r() const { return r_; }
  const CMatrix& sigma() const { return sigma_; }
  const matops::HermitianEigenSystem& sigma_eig() const { return sigma_eig_; }
  const RMatrix& defect() const { return defect_; }
  const matops::HermitianEigenSystem& defect_eig() const { return defect_eig_; }

  /// ‖Σ‖_∞
  double norm() const;

 private:
  CanonicalPolarisation(RMatrix r, RMatrix defect);

  RMatrix r_;
  CMatrix sigma_;
  RMatrix defect_;
  matops::HermitianEigenSystem sigma_eig_;
  matops::HermitianEigenSystem defect_eig_;
};

enum class PositivityClass { PSD, InvertiblePlusOne };

/// Symmetric δ in μ₀-orthonormal coordinates; the perturbed form is
/// μ_δ(f, g) = μ₀(f, (1 + δ) g).
class Perturbation {
 public:
  explicit Perturbation(RMatrix delta, PositivityClass cls = PositivityClass::PSD);

  static Perturbation zero(Eigen::Index dim);

  const RMatrix& delta() const { return delta_; }
  PositivityClass positivity_class() const { return class_; }
  const matops::HermitianEigenSystem& eig() const { return eig_; }
  Eigen::Index dim() const { return delta_.rows(); }
  double trace() const { return delta_.trace(); }
  double min_eigenvalue() const { return eig_.values.size() ? eig_.values(0) : 0.0; }

 private:
  RMatrix delta_;
  PositivityClass class_;
  matops::HermitianEigenSystem eig_;
};

struct OneParticleStructure {
  CMatrix kappa;  // sqrt(1 + Σ)
  int kernel_dim = 0;
};

/// R = μ^{-1/2} σ μ^{-1/2}. Throws DominationFailure when ‖Σ‖ > 1 + 1e-10.
CanonicalPolarisation polarisation_canonical(const GaussianStateForm& state);

/// R_δ = (1+δ)^{-1/2} R₀ (1+δ)^{-1/2}.
CanonicalPolarisation perturb(const CanonicalPolarisation& base, const Perturbation& delta);
CanonicalPolarisation perturb(const GaussianStateForm& base, const Perturbation& delta);

OneParticleStructure one_particle_map(const CanonicalPolarisation& pol);

/// ω₂ = ½(μ + iσ) in raw coordinates.
CMatrix two_point(const GaussianStateForm& state);

/// 1 − ‖Σ‖_∞; negative when μ fails to dominate σ.
double domination_margin(const GaussianStateForm& state);

/// δ = μ₀^{-1/2} μ_δ μ₀^{-1/2} − 1 for a perturbed form given in raw coordinates.
Perturbation perturbation_from_forms(const GaussianStateForm& base, const RMatrix& mu_delta,
                                     PositivityClass cls = PositivityClass::PSD);

/// δ = μ₀^{-1/2} D μ₀^{-1/2} for a raw increment D = μ_δ − μ₀.
Perturbation perturbation_from_raw(const GaussianStateForm& base, const RMatrix& raw_delta,
                                   PositivityClass cls = PositivityClass::PSD);

}  // namespace gaussmod

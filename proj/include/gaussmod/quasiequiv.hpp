#pragma once

// Quantities governing quasi-equivalence of Gaussian states, and checks of
// the operator inequalities that bound them. At finite dimension every pair
// of states is quasi-equivalent, so only the quantities are reported.

#include <vector>

#include "gaussmod/gaussian.hpp"
#include "gaussmod/modular.hpp"
#include "gaussmod/report.hpp"

namespace gaussmod {

struct ArakiYamagami {
  /// ‖√(1+δ+Σ₀) − √(1+Σ₀)‖_HS
  double hs_value = 0.0;
  /// hs_value² ≤ tr δ
  InequalityReport ps_bound;
  /// ‖1+δ‖_∞ and ‖(1+δ)^{-1}‖_∞, the equivalence constants of the two norms.
  double norm_one_plus_delta = 0.0;
  double norm_inverse_one_plus_delta = 0.0;
};

/// Throws NotPSD when 1+δ+Σ₀ is not positive semidefinite.
ArakiYamagami araki_yamagami_quantities(const CMatrix& sigma0, const Perturbation& delta);

struct LongoQuantities {
  double inverse_hs = 0.0;       // ‖R₁⁻¹ − R₂⁻¹‖_HS
  double inverse_sqrt_hs = 0.0;  // ‖R₁⁻¹√(1+R₁²) − R₂⁻¹√(1+R₂²)‖_HS
  double sqrt_hs = 0.0;          // ‖√(1+R₁²) − √(1+R₂²)‖_HS
};

/// Throws NotFactorial unless both R are invertible with margin > eps.
LongoQuantities longo_quantities(const CanonicalPolarisation& r1, const CanonicalPolarisation& r2,
                                 double eps = kFactorialEps);

/// HS norm of the decomposition
///   R₁⁻¹C₁ − R₂⁻¹C₂ − (R₁⁻¹ − R₂⁻¹)C₁ − R₂⁻¹(C₁ − C₂),  C = √(1+R²),
/// which vanishes identically.
double longo_decomposition_residual(const CanonicalPolarisation& r1, const CanonicalPolarisation& r2,
                                    double eps = kFactorialEps);

/// ‖R_δ − R₀‖_p ≤ ‖δ‖_p for PSD δ; 2‖(1+δ)^{-1/2}‖_∞‖δ‖_p when only 1+δ > 0.
InequalityReport verify_R_estimate(const CanonicalPolarisation& base, const Perturbation& delta,
                                   matops::SchattenP p);
InequalityReport verify_R_estimate(const GaussianStateForm& base, const Perturbation& delta,
                                   matops::SchattenP p);

/// (a) ‖√(1+R_δ²) − √(1+R₀²)‖²_HS ≤ 2 tr δ
/// (b) tr|R_δ⁻¹ − R₀⁻¹| ≤ 2‖R₀⁻¹‖ tr δ
/// (c) ‖R_δ⁻¹√(1+R_δ²) − R₀⁻¹√(1+R₀²)‖²_HS ≤ 4‖R₀⁻¹‖²(tr δ + 2(tr δ)²)
/// (b) and (c) are skipped when R₀ is not invertible. Throws NotPositive
/// unless δ is PSD.
std::vector<InequalityReport> verify_theorem_bounds(const CanonicalPolarisation& base,
                                                    const Perturbation& delta,
                                                    double factorial_eps = kFactorialEps);
std::vector<InequalityReport> verify_theorem_bounds(const GaussianStateForm& base,
                                                    const Perturbation& delta);

/// The bounds of verify_theorem_bounds with the perturbed side evaluated as
/// sech, i·coth and i·csch of K_δ/2, followed by one equality report per bound
/// comparing against the R-route lhs (1e-9 relative), and
/// tr|−i tanh(K_δ/2) − R₀| ≤ tr δ. Throws NotStandard unless R_δ is standard.
std::vector<InequalityReport> verify_corollary_modular(const CanonicalPolarisation& base,
                                                       const Perturbation& delta,
                                                       const ModularOptions& options = {});
std::vector<InequalityReport> verify_corollary_modular(const GaussianStateForm& base,
                                                       const Perturbation& delta);

/// ‖√A − √B‖²_HS ≤ tr|A − B|
InequalityReport powers_stormer_check(const CMatrix& a, const CMatrix& b);

/// α‖√A − √B‖_p ≤ ‖A − B‖_p with α = min eig(√A + √B).
InequalityReport van_hemmen_ando_check(const CMatrix& a, const CMatrix& b, matops::SchattenP p);

/// ‖√A X √B‖_p ≤ ½‖AX + XB‖_p
InequalityReport am_gm_check(const CMatrix& a, const CMatrix& b, const CMatrix& x,
                             matops::SchattenP p);

/// ‖f(Σ_δ) − f(Σ₀)‖_HS ≤ k·(bound on ‖R_δ − R₀‖_HS) for f with Lipschitz
/// constant k on [−1, 1].
InequalityReport lipschitz_check(const matops::ScalarMap& f, double k,
                                 const CanonicalPolarisation& base, const Perturbation& delta);
InequalityReport lipschitz_check(const matops::ScalarMap& f, double k, const GaussianStateForm& base,
                                 const Perturbation& delta);

}  // namespace gaussmod

#include "gaussmod/quasiequiv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gaussmod {

using matops::SchattenP;

namespace {

constexpr double kRouteRtol = 1e-9;
const Complex kI(0.0, 1.0);

CMatrix r_inverse(const CanonicalPolarisation& pol) {
  return matops::inverse(matops::complexify(pol.r()));
}

CMatrix sqrt_defect(const CanonicalPolarisation& pol) { return matops::sqrt_psd(pol.defect_eig()); }

double hs2(const CMatrix& a) {
  const double n = matops::schatten_norm(a, SchattenP::Two);
  return n * n;
}

void require_psd_delta(const Perturbation& delta, const char* what) {
  if (delta.positivity_class() != PositivityClass::PSD) {
    throw Error(ErrorKind::NotPositive, std::string(what) + ": delta must be positive semidefinite");
  }
}

void require_factorial(const CanonicalPolarisation& pol, double eps, const char* what) {
  const CheckResult check = factorial_check(pol, eps);
  if (!check.ok) {
    throw Error(ErrorKind::NotFactorial,
                std::string(what) + ": R is not invertible (min |eig| " + std::to_string(check.margin) + ")");
  }
}

void require_psd(const CMatrix& a, const char* what) {
  matops::require_square(a, what);
  matops::require_finite(a, what);
  const matops::HermitianEigenSystem eig = matops::hermitian_eig(a);
  if (eig.size() == 0) return;
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  if (eig.values(0) < -1e-10 * scale) {
    throw Error(ErrorKind::NotPSD, std::string(what) + ": eigenvalue " + std::to_string(eig.values(0)));
  }
}

// ‖R₀⁻¹‖_∞ = 1/min|eig Σ₀|
double inverse_norm(const CanonicalPolarisation& pol) {
  return 1.0 / factorial_check(pol, 0.0).margin;
}

struct TheoremTerms {
  double trace_delta;
  double inv_norm;
};

InequalityReport bound_a(double lhs, const TheoremTerms& t) {
  return make_inequality("sqrt_defect_hs2_le_2trdelta", lhs, 2.0 * t.trace_delta);
}
InequalityReport bound_b(double lhs, const TheoremTerms& t) {
  return make_inequality("inverse_r_trace_norm_le_2norm_trdelta", lhs, 2.0 * t.inv_norm * t.trace_delta);
}
InequalityReport bound_c(double lhs, const TheoremTerms& t) {
  return make_inequality("inverse_r_sqrt_defect_hs2_bound", lhs,
                         4.0 * t.inv_norm * t.inv_norm * (t.trace_delta + 2.0 * t.trace_delta * t.trace_delta));
}

const char* kNotInvertible = "skipped: R0 not invertible";

}  // namespace

ArakiYamagami araki_yamagami_quantities(const CMatrix& sigma0, const Perturbation& delta) {
  matops::require_square(sigma0, "araki_yamagami_quantities");
  if (sigma0.rows() != delta.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "araki_yamagami_quantities");
  }
  const CMatrix one_plus = matops::identity(delta.dim()) + sigma0;
  const CMatrix perturbed = one_plus + matops::complexify(delta.delta());
  ArakiYamagami out;
  out.hs_value = matops::schatten_norm(matops::sqrt_psd(perturbed) - matops::sqrt_psd(one_plus), SchattenP::Two);
  out.ps_bound = make_inequality("araki_yamagami_hs2_le_trdelta", out.hs_value * out.hs_value, delta.trace());
  if (delta.dim() > 0) {
    const RVector& d = delta.eig().values;
    out.norm_one_plus_delta = std::max(std::abs(1.0 + d(0)), std::abs(1.0 + d(d.size() - 1)));
    out.norm_inverse_one_plus_delta = 1.0 / (1.0 + d(0));
  }
  return out;
}

LongoQuantities longo_quantities(const CanonicalPolarisation& r1, const CanonicalPolarisation& r2, double eps) {
  if (r1.dim() != r2.dim()) throw Error(ErrorKind::DimensionMismatch, "longo_quantities");
  require_factorial(r1, eps, "longo_quantities");
  require_factorial(r2, eps, "longo_quantities");
  const CMatrix i1 = r_inverse(r1), i2 = r_inverse(r2);
  const CMatrix c1 = sqrt_defect(r1), c2 = sqrt_defect(r2);
  LongoQuantities q;
  q.inverse_hs = matops::schatten_norm(i1 - i2, SchattenP::Two);
  q.inverse_sqrt_hs = matops::schatten_norm(i1 * c1 - i2 * c2, SchattenP::Two);
  q.sqrt_hs = matops::schatten_norm(c1 - c2, SchattenP::Two);
  return q;
}

double longo_decomposition_residual(const CanonicalPolarisation& r1, const CanonicalPolarisation& r2,
                                    double eps) {
  if (r1.dim() != r2.dim()) throw Error(ErrorKind::DimensionMismatch, "longo_decomposition_residual");
  require_factorial(r1, eps, "longo_decomposition_residual");
  require_factorial(r2, eps, "longo_decomposition_residual");
  const CMatrix i1 = r_inverse(r1), i2 = r_inverse(r2);
  const CMatrix c1 = sqrt_defect(r1), c2 = sqrt_defect(r2);
  const CMatrix combo = i1 * c1 - i2 * c2 - (i1 - i2) * c1 - i2 * (c1 - c2);
  return matops::schatten_norm(combo, SchattenP::Two);
}

InequalityReport verify_R_estimate(const CanonicalPolarisation& base, const Perturbation& delta, SchattenP p) {
  const CanonicalPolarisation perturbed = perturb(base, delta);
  const double lhs = matops::schatten_norm(matops::complexify(perturbed.r() - base.r()), p);
  const double delta_norm = matops::schatten_norm(matops::complexify(delta.delta()), p);
  const std::string name = "r_estimate_p" + matops::to_string(p);
  if (delta.positivity_class() == PositivityClass::PSD) {
    return make_inequality(name, lhs, delta_norm);
  }
  const double lo = delta.dim() ? delta.min_eigenvalue() : 0.0;
  return make_inequality(name, lhs, 2.0 / std::sqrt(1.0 + lo) * delta_norm);
}

InequalityReport verify_R_estimate(const GaussianStateForm& base, const Perturbation& delta, SchattenP p) {
  return verify_R_estimate(polarisation_canonical(base), delta, p);
}

std::vector<InequalityReport> verify_theorem_bounds(const CanonicalPolarisation& base, const Perturbation& delta,
                                                    double factorial_eps) {
  require_psd_delta(delta, "verify_theorem_bounds");
  const CanonicalPolarisation perturbed = perturb(base, delta);
  const bool invertible = factorial_check(base, factorial_eps).ok;
  const TheoremTerms terms{delta.trace(), invertible ? inverse_norm(base) : 0.0};

  const CMatrix c0 = sqrt_defect(base), cd = sqrt_defect(perturbed);
  std::vector<InequalityReport> out;
  out.push_back(bound_a(hs2(cd - c0), terms));
  if (!invertible) {
    out.push_back(make_skipped(bound_b(0.0, terms).name, kNotInvertible));
    out.push_back(make_skipped(bound_c(0.0, terms).name, kNotInvertible));
    return out;
  }
  const CMatrix i0 = r_inverse(base), id = r_inverse(perturbed);
  out.push_back(bound_b(matops::schatten_norm(id - i0, SchattenP::One), terms));
  out.push_back(bound_c(hs2(id * cd - i0 * c0), terms));
  return out;
}

std::vector<InequalityReport> verify_theorem_bounds(const GaussianStateForm& base, const Perturbation& delta) {
  return verify_theorem_bounds(polarisation_canonical(base), delta);
}

std::vector<InequalityReport> verify_corollary_modular(const CanonicalPolarisation& base,
                                                       const Perturbation& delta,
                                                       const ModularOptions& options) {
  require_psd_delta(delta, "verify_corollary_modular");
  const CanonicalPolarisation perturbed = perturb(base, delta);
  const ModularData data = modular_operator(perturbed, options.standard_eps);
  const bool invertible = factorial_check(base, options.factorial_eps).ok;
  const ModularFunctions f = modular_functions(data, invertible);
  const TheoremTerms terms{delta.trace(), invertible ? inverse_norm(base) : 0.0};
  const std::vector<InequalityReport> r_route = verify_theorem_bounds(base, delta, options.factorial_eps);

  const CMatrix c0 = sqrt_defect(base);
  std::vector<InequalityReport> bounds, routes;
  auto add = [&](InequalityReport k_report, const InequalityReport& r_report) {
    k_report.name = "modular_" + k_report.name;
    routes.push_back(make_equality("route_consistency_" + r_report.name, k_report.lhs, r_report.lhs, kRouteRtol));
    bounds.push_back(std::move(k_report));
  };
  add(bound_a(hs2(f.sech_half - c0), terms), r_route[0]);
  if (invertible) {
    const CMatrix i0 = r_inverse(base);
    add(bound_b(matops::schatten_norm(kI * f.coth_half() - i0, SchattenP::One), terms), r_route[1]);
    add(bound_c(hs2(kI * f.csch_half() - i0 * c0), terms), r_route[2]);
  } else {
    bounds.push_back(make_skipped("modular_" + r_route[1].name, kNotInvertible));
    bounds.push_back(make_skipped("modular_" + r_route[2].name, kNotInvertible));
  }
  const double tanh_lhs =
      matops::schatten_norm(-kI * f.tanh_half - matops::complexify(base.r()), SchattenP::One);
  bounds.push_back(make_inequality("modular_tanh_trace_norm_le_trdelta", tanh_lhs, delta.trace()));
  bounds.insert(bounds.end(), routes.begin(), routes.end());
  return bounds;
}

std::vector<InequalityReport> verify_corollary_modular(const GaussianStateForm& base, const Perturbation& delta) {
  return verify_corollary_modular(polarisation_canonical(base), delta);
}

InequalityReport powers_stormer_check(const CMatrix& a, const CMatrix& b) {
  matops::require_same_shape(a, b, "powers_stormer_check");
  require_psd(a, "powers_stormer_check: A");
  require_psd(b, "powers_stormer_check: B");
  return make_inequality("powers_stormer", hs2(matops::sqrt_psd(a) - matops::sqrt_psd(b)),
                         matops::schatten_norm(a - b, SchattenP::One));
}

InequalityReport van_hemmen_ando_check(const CMatrix& a, const CMatrix& b, SchattenP p) {
  matops::require_same_shape(a, b, "van_hemmen_ando_check");
  require_psd(a, "van_hemmen_ando_check: A");
  require_psd(b, "van_hemmen_ando_check: B");
  const CMatrix sa = matops::sqrt_psd(a), sb = matops::sqrt_psd(b);
  const matops::HermitianEigenSystem sum = matops::hermitian_eig(sa + sb);
  const double alpha = sum.size() ? std::max(0.0, sum.values(0)) : 0.0;
  return make_inequality("van_hemmen_ando_p" + matops::to_string(p),
                         alpha * matops::schatten_norm(sa - sb, p), matops::schatten_norm(a - b, p));
}

InequalityReport am_gm_check(const CMatrix& a, const CMatrix& b, const CMatrix& x, SchattenP p) {
  matops::require_same_shape(a, b, "am_gm_check");
  matops::require_same_shape(a, x, "am_gm_check");
  require_psd(a, "am_gm_check: A");
  require_psd(b, "am_gm_check: B");
  const CMatrix lhs = matops::sqrt_psd(a) * x * matops::sqrt_psd(b);
  return make_inequality("am_gm_p" + matops::to_string(p), matops::schatten_norm(lhs, p),
                         0.5 * matops::schatten_norm(a * x + x * b, p));
}

InequalityReport lipschitz_check(const matops::ScalarMap& f, double k, const CanonicalPolarisation& base,
                                 const Perturbation& delta) {
  if (!(k >= 0.0)) throw Error(ErrorKind::InvalidArgument, "lipschitz_check: negative constant");
  const CanonicalPolarisation perturbed = perturb(base, delta);
  const double lhs = matops::schatten_norm(
      matops::matrix_function(perturbed.sigma_eig(), f) - matops::matrix_function(base.sigma_eig(), f),
      SchattenP::Two);
  const InequalityReport lemma = verify_R_estimate(base, delta, SchattenP::Two);
  return make_inequality("lipschitz_" + f.name, lhs, k * lemma.rhs);
}

InequalityReport lipschitz_check(const matops::ScalarMap& f, double k, const GaussianStateForm& base,
                                 const Perturbation& delta) {
  return lipschitz_check(f, k, polarisation_canonical(base), delta);
}

}  // namespace gaussmod

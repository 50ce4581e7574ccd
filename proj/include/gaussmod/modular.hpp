#pragma once

// Modular theory of the standard subspace κ(D) at finite dimension:
// Δ = (1 − Σ)/(1 + Σ), K = −log Δ = 2 artanh Σ, J = entrywise conjugation.

#include <cstdint>
#include <optional>

#include "gaussmod/gaussian.hpp"

namespace gaussmod {

inline constexpr double kStandardEps = 1e-10;
inline constexpr double kFactorialEps = 1e-10;

struct CheckResult {
  bool ok = false;
  double margin = 0.0;
};

/// 1 ± Σ > eps. The margin 1 − ‖Σ‖ is evaluated from the defect 1 − Σ², so
/// it stays accurate for nearly pure states.
CheckResult standardness_check(const CanonicalPolarisation& pol, double eps = kStandardEps);

/// min |eig Σ| > eps, i.e. R invertible.
CheckResult factorial_check(const CanonicalPolarisation& pol, double eps = kFactorialEps);

/// Spectral data of K with its eigenvectors; Δ and Σ share them.
struct ModularData {
  CMatrix sigma;
  RVector k_eigs;      // ascending
  RVector delta_eigs;  // exp(−k)
  CMatrix eigenvectors;
  /// ‖K − (−log Δ)‖_∞ / max(1, ‖K‖_∞) between the artanh and log routes;
  /// filled in by modular_hamiltonian only.
  std::optional<double> path_residual;

  CMatrix hamiltonian() const;
  CMatrix modular_operator() const;
  /// V·diag(f(k))·V*
  CMatrix function_of_k(const std::function<Complex(double)>& f) const;
};

/// Throws NotStandard when standardness_check fails at `eps`.
ModularData modular_operator(const CanonicalPolarisation& pol, double eps = kStandardEps);
ModularData modular_hamiltonian(const CanonicalPolarisation& pol, double eps = kStandardEps);

struct ModularOptions {
  double standard_eps = kStandardEps;
  double factorial_eps = kFactorialEps;
};

/// Hyperbolic functions of K/2 evaluated on the spectrum of K:
/// tanh = Σ, sech = √(1 − Σ²), coth = Σ⁻¹, csch = Σ⁻¹√(1 − Σ²).
class ModularFunctions {
 public:
  CMatrix tanh_half;
  CMatrix sech_half;

  bool factorial() const { return coth_.has_value(); }
  /// Throw NotFactorial when Σ has a zero eigenvalue.
  const CMatrix& coth_half() const;
  const CMatrix& csch_half() const;

 private:
  friend ModularFunctions modular_functions(const ModularData&, bool);
  std::optional<CMatrix> coth_;
  std::optional<CMatrix> csch_;
};

ModularFunctions modular_functions(const CanonicalPolarisation& pol, const ModularOptions& options = {});
ModularFunctions modular_functions(const ModularData& data, bool factorial);

struct TomitaResult {
  /// max over trials of ‖S(κv + iκw) − (κv − iκw)‖ / (‖κv‖ + ‖κw‖)
  double max_residual = 0.0;
  /// ‖ΓΔ^{1/2}Γ − Δ^{-1/2}‖_max / max(1, ‖Δ^{-1/2}‖_max)
  double conjugation_residual = 0.0;
  /// how well the conjugation-paired eigenbasis reproduces Σ and ΓKΓ = −K
  double basis_residual = 0.0;
};

/// Checks S = Δ^{-1/2}Γ on seeded random real vectors. Vectors are handled in
/// an eigenbasis of K whose negative half is the complex conjugate of the
/// positive half, so Γ acts exactly and the e^{±K/2} factors never meet
/// rounding noise from the opposite end of the spectrum.
TomitaResult tomita_verify(const CanonicalPolarisation& pol, int trials, std::uint64_t seed,
                           double eps = kStandardEps);

}  // namespace gaussmod

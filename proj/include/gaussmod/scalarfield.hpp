#pragma once

// Free real scalar field of mass m on a circle or flat torus, truncated to
// finitely many Fourier modes. Each real mode function contributes two basis
// vectors (field and momentum Cauchy data), interleaved as (2j, 2j+1); in
// these coordinates the vacuum polarisation is block diagonal with blocks
// [[0, −1], [1, 0]].

#include <vector>

#include "gaussmod/gaussian.hpp"
#include "gaussmod/modular.hpp"
#include "gaussmod/report.hpp"

namespace gaussmod::field {

enum class GeometryKind { Circle, Torus, Custom };

struct Geometry {
  GeometryKind kind = GeometryKind::Circle;
  std::vector<double> lengths;

  static Geometry circle(double length);
  static Geometry torus(std::vector<double> lengths);
};

struct Mode {
  double omega = 0.0;
  int multiplicity = 0;
};

struct ModeSpectrum {
  Geometry geometry;
  double mass = 0.0;
  int cutoff = 0;
  std::vector<Mode> modes;  // ascending ω

  /// Σ g_k, the number of real mode functions.
  Eigen::Index real_modes() const;
  /// 2·Σ g_k
  Eigen::Index dim() const;
  /// ω of every basis vector, in basis order.
  RVector basis_frequencies() const;
};

inline constexpr Eigen::Index kMaxDenseDim = 4096;

/// Circle: ω_n = √((2πn/L)² + m²), n = 0..N, g = 1 for n = 0 and 2 otherwise.
/// Torus (d ≤ 3): lattice points with max|n_i| ≤ N, grouped by equal ω.
/// Throws NonPositiveMass for m ≤ 0 and InvalidArgument beyond kMaxDenseDim.
ModeSpectrum build_spectrum(const Geometry& geometry, double mass, int cutoff);

/// Explicit (ω, g) list; every ω must be positive.
ModeSpectrum custom_spectrum(std::vector<Mode> modes, double mass);

CanonicalPolarisation vacuum_polarisation(const ModeSpectrum& spec);

/// Bose factor 2/(e^{βω} − 1).
double bose_delta(double beta, double omega);

/// δ_β, diagonal, equal on both Cauchy components of each mode.
Perturbation thermal_delta(const ModeSpectrum& spec, double beta);

/// δ from the blocks acting on field/momentum data (each real_modes() square).
Perturbation delta_from_blocks(const ModeSpectrum& spec, const RMatrix& d00, const RMatrix& d01,
                               const RMatrix& d10, const RMatrix& d11);

enum class StateKind { Vacuum, Thermal, Custom };

struct FieldState {
  StateKind kind = StateKind::Vacuum;
  double beta = 0.0;
  RMatrix delta;  // Custom only, basis coordinates
};

Perturbation state_delta(const ModeSpectrum& spec, const FieldState& state);

struct EnergyResult {
  double energy = 0.0;
  /// (m/4)·tr δ ≤ E
  InequalityReport lower_bound;
};

/// E = ¼ tr(A^{1/4} δ A^{1/4}). Throws NotPositive unless δ is PSD.
EnergyResult energy(const ModeSpectrum& spec, const Perturbation& delta);

// Closed-form mode sums for the thermal state.
double thermal_trace_closed_form(const ModeSpectrum& spec, double beta);
double thermal_energy_closed_form(const ModeSpectrum& spec, double beta);
double thermal_sech_hs2_closed_form(const ModeSpectrum& spec, double beta);
double thermal_csch_hs2_closed_form(const ModeSpectrum& spec, double beta);
/// {±βω_k} with multiplicity g_k each, ascending.
RVector thermal_k_spectrum_closed_form(const ModeSpectrum& spec, double beta);

struct FieldOptions {
  /// δ must have min eigenvalue above this for K_δ to exist.
  double positivity_eps = 1e-10;
  double standard_eps = kStandardEps;
};

/// tr|i coth(K_δ/2) + R_vac| ≤ 8E/m, ‖sech(K_δ/2)‖²_HS ≤ 8E/m,
/// ‖csch(K_δ/2)‖²_HS ≤ 16(E/m)(1 + 8E/m). Throws NotStrictlyPositive.
std::vector<InequalityReport> verify_minkowski_bounds(const ModeSpectrum& spec, const Perturbation& delta,
                                                      const FieldOptions& options = {});

/// Dense evaluations against mode sums:
///   tr|R_β⁻¹ − R_vac⁻¹| = tr δ_β,
///   ‖√(1+R_β²)‖²_HS = Σ 2g tanh(βω/2)(1 + tanh(βω/2))δ and < 2 tr δ_β,
///   ‖R_β⁻¹√(1+R_β²)‖²_HS = Σ 2g δ(δ + 2),
///   spec K_β = {±βω}.
/// Reports needing K_β are skipped when some δ_k underflows to zero.
std::vector<InequalityReport> thermal_exact_identities(const ModeSpectrum& spec, double beta,
                                                       const FieldOptions& options = {});

/// tr δ_β at each cutoff, by mode sum.
std::vector<double> thermal_trace_by_cutoff(const Geometry& geometry, double mass, double beta,
                                            const std::vector<int>& cutoffs);

}  // namespace gaussmod::field

#include "gaussmod/scalarfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gaussmod::field {

using matops::SchattenP;

namespace {

constexpr double kGroupRtol = 1e-12;
constexpr double kIdentityRtol = 1e-10;
constexpr double kSpectrumAtol = 1e-10;
const Complex kI(0.0, 1.0);

void require_mass(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw Error(ErrorKind::NonPositiveMass, "mass must be positive");
  }
}

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  }
}

void require_dim(Eigen::Index dim) {
  if (dim > kMaxDenseDim) {
    throw Error(ErrorKind::InvalidArgument,
                "mode cutoff gives dimension " + std::to_string(dim) + " > " + std::to_string(kMaxDenseDim));
  }
}

std::vector<Mode> group_modes(std::vector<double> omega_sq) {
  std::sort(omega_sq.begin(), omega_sq.end());
  std::vector<Mode> modes;
  double group_start = -1.0;
  for (double w2 : omega_sq) {
    if (!modes.empty() && w2 - group_start <= kGroupRtol * w2) {
      ++modes.back().multiplicity;
    } else {
      group_start = w2;
      modes.push_back({std::sqrt(w2), 1});
    }
  }
  return modes;
}

template <class F>
double mode_sum(const ModeSpectrum& spec, F&& term) {
  double total = 0.0;
  for (const Mode& mode : spec.modes) total += mode.multiplicity * term(mode.omega);
  return total;
}

// Every mode δ_k > 0; false once a Bose factor underflows.
bool all_modes_excited(const ModeSpectrum& spec, double beta) {
  return std::all_of(spec.modes.begin(), spec.modes.end(),
                     [beta](const Mode& m) { return bose_delta(beta, m.omega) > 0.0; });
}

}  // namespace

Geometry Geometry::circle(double length) { return {GeometryKind::Circle, {length}}; }

Geometry Geometry::torus(std::vector<double> lengths) { return {GeometryKind::Torus, std::move(lengths)}; }

Eigen::Index ModeSpectrum::real_modes() const {
  Eigen::Index n = 0;
  for (const Mode& m : modes) n += m.multiplicity;
  return n;
}

Eigen::Index ModeSpectrum::dim() const { return 2 * real_modes(); }

RVector ModeSpectrum::basis_frequencies() const {
  RVector out(dim());
  Eigen::Index i = 0;
  for (const Mode& m : modes) {
    for (int g = 0; g < 2 * m.multiplicity; ++g) out(i++) = m.omega;
  }
  return out;
}

ModeSpectrum build_spectrum(const Geometry& geometry, double mass, int cutoff) {
  require_mass(mass);
  if (cutoff < 0) throw Error(ErrorKind::InvalidArgument, "cutoff must be non-negative");
  for (double l : geometry.lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorKind::InvalidArgument, "lengths must be positive");
  }
  ModeSpectrum spec;
  spec.geometry = geometry;
  spec.mass = mass;
  spec.cutoff = cutoff;
  const double two_pi = 2.0 * std::numbers::pi;

  switch (geometry.kind) {
    case GeometryKind::Circle: {
      if (geometry.lengths.size() != 1) throw Error(ErrorKind::InvalidArgument, "circle takes one length");
      require_dim(2 * (2 * static_cast<Eigen::Index>(cutoff) + 1));
      for (int n = 0; n <= cutoff; ++n) {
        const double k = two_pi * n / geometry.lengths[0];
        spec.modes.push_back({std::sqrt(k * k + mass * mass), n == 0 ? 1 : 2});
      }
      break;
    }
    case GeometryKind::Torus: {
      const auto d = geometry.lengths.size();
      if (d < 1 || d > 3) throw Error(ErrorKind::InvalidArgument, "torus dimension must be 1, 2 or 3");
      const Eigen::Index side = 2 * static_cast<Eigen::Index>(cutoff) + 1;
      Eigen::Index points = 1;
      for (std::size_t i = 0; i < d; ++i) {
        points *= side;
        require_dim(2 * points);
      }
      std::vector<double> omega_sq;
      omega_sq.reserve(static_cast<std::size_t>(points));
      std::vector<int> n(d, -cutoff);
      for (Eigen::Index p = 0; p < points; ++p) {
        double w2 = mass * mass;
        for (std::size_t i = 0; i < d; ++i) {
          const double k = two_pi * n[i] / geometry.lengths[i];
          w2 += k * k;
        }
        omega_sq.push_back(w2);
        for (std::size_t i = 0; i < d && ++n[i] > cutoff; ++i) n[i] = -cutoff;
      }
      spec.modes = group_modes(std::move(omega_sq));
      break;
    }
    case GeometryKind::Custom:
      throw Error(ErrorKind::InvalidArgument, "custom spectra are built with custom_spectrum");
  }
  return spec;
}

ModeSpectrum custom_spectrum(std::vector<Mode> modes, double mass) {
  require_mass(mass);
  ModeSpectrum spec;
  spec.geometry.kind = GeometryKind::Custom;
  spec.mass = mass;
  for (const Mode& m : modes) {
    if (!(m.omega > 0.0) || m.multiplicity < 1) {
      throw Error(ErrorKind::InvalidArgument, "custom modes need ω > 0 and g ≥ 1");
    }
  }
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.omega < b.omega; });
  spec.modes = std::move(modes);
  require_dim(spec.dim());
  return spec;
}

CanonicalPolarisation vacuum_polarisation(const ModeSpectrum& spec) {
  const Eigen::Index n = spec.dim();
  RMatrix r = RMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; j += 2) {
    r(j, j + 1) = -1.0;
    r(j + 1, j) = 1.0;
  }
  return CanonicalPolarisation::from_matrix(r);
}

double bose_delta(double beta, double omega) { return 2.0 / std::expm1(beta * omega); }

Perturbation thermal_delta(const ModeSpectrum& spec, double beta) {
  require_beta(beta);
  const RVector w = spec.basis_frequencies();
  RVector d(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) d(i) = bose_delta(beta, w(i));
  return Perturbation(d.asDiagonal().toDenseMatrix());
}

Perturbation delta_from_blocks(const ModeSpectrum& spec, const RMatrix& d00, const RMatrix& d01,
                               const RMatrix& d10, const RMatrix& d11) {
  const Eigen::Index r = spec.real_modes();
  for (const RMatrix* b : {&d00, &d01, &d10, &d11}) {
    if (b->rows() != r || b->cols() != r) {
      throw Error(ErrorKind::DimensionMismatch, "delta_from_blocks: blocks must be " + std::to_string(r) + " square");
    }
  }
  RMatrix d(2 * r, 2 * r);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      d(2 * i, 2 * j) = d00(i, j);
      d(2 * i, 2 * j + 1) = d01(i, j);
      d(2 * i + 1, 2 * j) = d10(i, j);
      d(2 * i + 1, 2 * j + 1) = d11(i, j);
    }
  }
  return Perturbation(d);
}

Perturbation state_delta(const ModeSpectrum& spec, const FieldState& state) {
  switch (state.kind) {
    case StateKind::Vacuum: return Perturbation::zero(spec.dim());
    case StateKind::Thermal:
      require_mass(spec.mass);
      return thermal_delta(spec, state.beta);
    case StateKind::Custom:
      if (state.delta.rows() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "state_delta");
      return Perturbation(state.delta);
  }
  throw Error(ErrorKind::InvalidArgument, "state_delta: unknown state kind");
}

EnergyResult energy(const ModeSpectrum& spec, const Perturbation& delta) {
  if (delta.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "energy");
  if (delta.positivity_class() != PositivityClass::PSD) {
    throw Error(ErrorKind::NotPositive, "energy: delta must be positive semidefinite");
  }
  const RVector w = spec.basis_frequencies();
  EnergyResult out;
  out.energy = 0.25 * w.dot(delta.delta().diagonal());
  out.lower_bound = make_inequality("energy_lower_bound", 0.25 * spec.mass * delta.trace(), out.energy);
  return out;
}

double thermal_trace_closed_form(const ModeSpectrum& spec, double beta) {
  return mode_sum(spec, [beta](double w) { return 4.0 / std::expm1(beta * w); });
}

double thermal_energy_closed_form(const ModeSpectrum& spec, double beta) {
  return mode_sum(spec, [beta](double w) { return w / std::expm1(beta * w); });
}

double thermal_sech_hs2_closed_form(const ModeSpectrum& spec, double beta) {
  return mode_sum(spec, [beta](double w) {
    const double t = std::tanh(0.5 * beta * w);
    return 2.0 * t * (1.0 + t) * bose_delta(beta, w);
  });
}

double thermal_csch_hs2_closed_form(const ModeSpectrum& spec, double beta) {
  return mode_sum(spec, [beta](double w) {
    const double d = bose_delta(beta, w);
    return 2.0 * d * (d + 2.0);
  });
}

RVector thermal_k_spectrum_closed_form(const ModeSpectrum& spec, double beta) {
  std::vector<double> vals;
  for (const Mode& m : spec.modes) {
    for (int g = 0; g < m.multiplicity; ++g) {
      vals.push_back(beta * m.omega);
      vals.push_back(-beta * m.omega);
    }
  }
  std::sort(vals.begin(), vals.end());
  return Eigen::Map<RVector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::vector<InequalityReport> verify_minkowski_bounds(const ModeSpectrum& spec, const Perturbation& delta,
                                                      const FieldOptions& options) {
  if (delta.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "verify_minkowski_bounds");
  if (!(delta.min_eigenvalue() > options.positivity_eps)) {
    throw Error(ErrorKind::NotStrictlyPositive,
                "verify_minkowski_bounds: min eigenvalue of delta is " + std::to_string(delta.min_eigenvalue()));
  }
  const double e = energy(spec, delta).energy;
  const double ratio = 8.0 * e / spec.mass;
  const CanonicalPolarisation vac = vacuum_polarisation(spec);
  const CanonicalPolarisation pol = perturb(vac, delta);
  const ModularFunctions f = modular_functions(modular_operator(pol, options.standard_eps), true);

  const CMatrix r_vac = matops::complexify(vac.r());
  const double coth_lhs = matops::schatten_norm(kI * f.coth_half() + r_vac, SchattenP::One);
  const double sech = matops::schatten_norm(f.sech_half, SchattenP::Two);
  const double csch = matops::schatten_norm(f.csch_half(), SchattenP::Two);
  return {
      make_inequality("vacuum_coth_trace_norm_le_8E_over_m", coth_lhs, ratio),
      make_inequality("sech_hs2_le_8E_over_m", sech * sech, ratio),
      make_inequality("csch_hs2_le_16E_over_m_times_1_plus_8E_over_m", csch * csch,
                      2.0 * e / spec.mass * 8.0 * (1.0 + ratio)),
  };
}

std::vector<InequalityReport> thermal_exact_identities(const ModeSpectrum& spec, double beta,
                                                       const FieldOptions& options) {
  require_mass(spec.mass);
  const Perturbation delta = thermal_delta(spec, beta);
  const CanonicalPolarisation vac = vacuum_polarisation(spec);
  const CanonicalPolarisation pol = perturb(vac, delta);
  const double tr = thermal_trace_closed_form(spec, beta);

  const CMatrix r_inv = matops::inverse(matops::complexify(pol.r()));
  const CMatrix r_vac_inv = -matops::complexify(vac.r());
  const CMatrix sqrt_defect = matops::sqrt_psd(pol.defect_eig());
  const double sech = matops::schatten_norm(sqrt_defect, SchattenP::Two);
  const double csch = matops::schatten_norm(r_inv * sqrt_defect, SchattenP::Two);

  std::vector<InequalityReport> out;
  out.push_back(make_equality("thermal_inverse_r_trace_norm_eq_trdelta",
                              matops::schatten_norm(r_inv - r_vac_inv, SchattenP::One), tr, kIdentityRtol));
  out.push_back(make_equality("thermal_sqrt_defect_hs2_eq_mode_sum", sech * sech,
                              thermal_sech_hs2_closed_form(spec, beta), kIdentityRtol));
  if (tr > 0.0) {
    out.push_back(make_strict("thermal_sqrt_defect_hs2_lt_2trdelta", sech * sech, 2.0 * tr));
  } else {
    out.push_back(make_skipped("thermal_sqrt_defect_hs2_lt_2trdelta", "skipped: tr delta underflows to 0"));
  }
  out.push_back(make_equality("thermal_inverse_r_sqrt_defect_hs2_eq_mode_sum", csch * csch,
                              thermal_csch_hs2_closed_form(spec, beta), kIdentityRtol));

  const std::string k_name = "thermal_k_spectrum_max_deviation";
  if (!all_modes_excited(spec, beta)) {
    out.push_back(make_skipped(k_name, "skipped: a Bose factor underflows, K is unbounded"));
    return out;
  }
  const RVector k = modular_operator(pol, options.standard_eps).k_eigs;
  const RVector expected = thermal_k_spectrum_closed_form(spec, beta);
  const double dev = k.size() ? (k - expected).cwiseAbs().maxCoeff() : 0.0;
  out.push_back(make_inequality(k_name, dev, kSpectrumAtol, 0.0));
  return out;
}

std::vector<double> thermal_trace_by_cutoff(const Geometry& geometry, double mass, double beta,
                                            const std::vector<int>& cutoffs) {
  require_beta(beta);
  std::vector<double> out;
  out.reserve(cutoffs.size());
  for (int n : cutoffs) out.push_back(thermal_trace_closed_form(build_spectrum(geometry, mass, n), beta));
  return out;
}

}  // namespace gaussmod::field

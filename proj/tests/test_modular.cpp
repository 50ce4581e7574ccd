#include <cmath>
#include <functional>

#include "gaussmod/modular.hpp"
#include "gaussmod/random.hpp"
#include "support.hpp"

using namespace gaussmod;
using namespace testing;

namespace {

const double kLn3 = std::log(3.0);

CanonicalPolarisation pol_from(double scale) { return CanonicalPolarisation::from_matrix(scale * symplectic2()); }

CanonicalPolarisation vacuum() { return pol_from(1.0); }

// Thermal single mode at βω = ln 3 built through the generic perturbation.
CanonicalPolarisation thermal_ln3() { return perturb(vacuum(), Perturbation(diag({1, 1}))); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("standardness_check examples") {
  const CheckResult zero = standardness_check(pol_from(0.0));
  CHECK(zero.ok);
  CHECK(zero.margin == doctest::Approx(1.0));
  const CheckResult vac = standardness_check(vacuum());
  CHECK_FALSE(vac.ok);
  CHECK(std::abs(vac.margin) < 1e-15);
  const CheckResult th = standardness_check(thermal_ln3());
  CHECK(th.ok);
  CHECK(th.margin == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("standardness margin resolves nearly pure thermal modes") {
  // 1 − tanh(x/2) = 2/(e^x + 1) for βω = x.
  for (double x : {10.0, 30.0, 60.0}) {
    const double d = 2.0 / std::expm1(x);
    const CheckResult c = standardness_check(perturb(vacuum(), Perturbation(diag({d, d}))), 0.0);
    CHECK(c.ok);
    CHECK(std::abs(c.margin - 2.0 / (std::exp(x) + 1.0)) <= 1e-13 * c.margin);
  }
}

TEST_CASE("factorial_check examples") {
  const CheckResult half = factorial_check(pol_from(0.5));
  CHECK(half.ok);
  CHECK(half.margin == doctest::Approx(0.5));
  RMatrix r = RMatrix::Zero(3, 3);
  r.block(0, 0, 2, 2) = 0.5 * symplectic2();
  const CheckResult odd = factorial_check(CanonicalPolarisation::from_matrix(r));
  CHECK_FALSE(odd.ok);
  CHECK(odd.margin < 1e-15);
  const CheckResult vac = factorial_check(vacuum());
  CHECK(vac.ok);
  CHECK(vac.margin == doctest::Approx(1.0));
}

TEST_CASE("modular_operator examples") {
  const ModularData d = modular_operator(pol_from(0.5));
  // Δ eigenvalues are listed alongside ascending K, so Δ descends.
  CHECK(d.delta_eigs(0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(d.delta_eigs(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(d.delta_eigs.minCoeff() > 0.0);
  const CMatrix delta = d.modular_operator();
  // Δ = (1 − Σ)/(1 + Σ) directly.
  const CMatrix s = pol_from(0.5).sigma();
  const CMatrix direct = (matops::identity(2) - s) * matops::inverse(matops::identity(2) + s);
  CHECK(max_abs_diff(delta, direct) < 1e-14);

  CHECK(max_abs_diff(modular_operator(pol_from(0.0)).modular_operator(), matops::identity(2)) < 1e-15);
  CHECK(kind_of([] { modular_operator(pol_from(1 - 1e-14)); }) == ErrorKind::NotStandard);
  CHECK(kind_of([] { modular_operator(vacuum()); }) == ErrorKind::NotStandard);
}

TEST_CASE("modular_hamiltonian examples") {
  const ModularData d = modular_hamiltonian(pol_from(0.5));
  CHECK(d.k_eigs(0) == doctest::Approx(-kLn3).epsilon(1e-14));
  CHECK(d.k_eigs(1) == doctest::Approx(kLn3).epsilon(1e-14));
  REQUIRE(d.path_residual);
  CHECK(*d.path_residual < 1e-14);
  CHECK(matops::max_abs(modular_hamiltonian(pol_from(0.0)).hamiltonian()) == 0.0);
  const ModularData th = modular_hamiltonian(thermal_ln3());
  CHECK(std::abs(th.k_eigs(0) + 1.0986122886681098) < 1e-12);
  CHECK(std::abs(th.k_eigs(1) - 1.0986122886681098) < 1e-12);
}

TEST_CASE("modular_hamiltonian resolves large beta omega") {
  for (double x : {5.0, 20.0, 40.0, 64.0}) {
    const double d = 2.0 / std::expm1(x);
    const ModularData data = modular_operator(perturb(vacuum(), Perturbation(diag({d, d}))), 0.0);
    CHECK(std::abs(data.k_eigs(1) - x) <= 1e-13 * x);
    CHECK(std::abs(data.k_eigs(0) + x) <= 1e-13 * x);
  }
}

TEST_CASE("modular_functions examples") {
  const ModularFunctions f = modular_functions(pol_from(0.5));
  const auto sech = matops::hermitian_eig(f.sech_half);
  CHECK(sech.values(0) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
  CHECK(sech.values(1) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
  const auto coth = matops::hermitian_eig(f.coth_half());
  CHECK(coth.values(0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(coth.values(1) == doctest::Approx(2.0).epsilon(1e-14));
  const auto csch = matops::hermitian_eig(f.csch_half());
  CHECK(csch.values(0) == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
  CHECK(csch.values(1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

  const ModularFunctions z = modular_functions(pol_from(0.0));
  CHECK(max_abs_diff(z.sech_half, matops::identity(2)) < 1e-15);
  CHECK(kind_of([&] { z.coth_half(); }) == ErrorKind::NotFactorial);
  CHECK(kind_of([&] { z.csch_half(); }) == ErrorKind::NotFactorial);
  CHECK(kind_of([] { modular_functions(vacuum()); }) == ErrorKind::NotStandard);
}

TEST_CASE("modular functions reproduce R, R^-1 and the defect root on random polarisations") {
  random::Rng rng(53);
  const Complex i(0, 1);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 2 * rng.uniform_int(1, 12);
    const CanonicalPolarisation pol = random::standard_polarisation(rng, n);
    if (!factorial_check(pol).ok) continue;
    const ModularFunctions f = modular_functions(pol);
    const CMatrix r = matops::complexify(pol.r());
    const CMatrix r_inv = matops::inverse(r);
    const CMatrix root = matops::sqrt_psd(pol.defect_eig());
    const double scale = std::max(1.0, matops::max_abs(r_inv));
    CHECK(max_abs_diff(f.tanh_half, pol.sigma()) < 1e-9);
    CHECK(max_abs_diff(-i * f.tanh_half, r) < 1e-9);
    CHECK(max_abs_diff(i * f.coth_half(), r_inv) < 1e-9 * scale);
    CHECK(max_abs_diff(i * f.csch_half(), r_inv * root) < 1e-9 * scale);
    CHECK(max_abs_diff(f.sech_half, root) < 1e-9);
    CHECK(max_abs_diff(f.sech_half * f.sech_half + f.tanh_half * f.tanh_half, matops::identity(n)) < 1e-9);
  }
}

TEST_CASE("modular group is unitary and K is spectrally symmetric") {
  random::Rng rng(59);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = rng.uniform_int(1, 32);
    const ModularData d = modular_operator(random::standard_polarisation(rng, n));
    for (Eigen::Index j = 0; j < n; ++j) CHECK(std::abs(d.k_eigs(j) + d.k_eigs(n - 1 - j)) < 1e-9);
    for (double time : {0.1, 1.0, 10.0}) {
      const CMatrix u = d.function_of_k([time](double k) { return std::exp(Complex(0, -time * k)); });
      CHECK(matops::max_abs(u.adjoint() * u - matops::identity(n)) < 1e-9);
    }
  }
}

TEST_CASE("the artanh and log routes to K agree on 1000 random standard polarisations") {
  random::Rng rng(61);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const ModularData d = modular_hamiltonian(random::standard_polarisation(rng, rng.uniform_int(1, 32)));
    worst = std::max(worst, *d.path_residual);
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("tomita_verify examples") {
  const TomitaResult zero = tomita_verify(pol_from(0.0), 10, 1);
  CHECK(zero.max_residual == 0.0);
  CHECK(zero.conjugation_residual == 0.0);

  const TomitaResult th = tomita_verify(thermal_ln3(), 100, 2);
  CHECK(th.max_residual <= 1e-10);
  CHECK(th.conjugation_residual <= 1e-10);
  CHECK(th.basis_residual <= 1e-10);

  random::Rng rng(42);
  const TomitaResult r = tomita_verify(random::standard_polarisation(rng, 16), 100, 42);
  CHECK(r.max_residual <= 1e-9);
  CHECK(r.conjugation_residual <= 1e-9);
  CHECK(r.basis_residual <= 1e-9);

  CHECK(kind_of([] { tomita_verify(vacuum(), 1, 0); }) == ErrorKind::NotStandard);
}

TEST_CASE("tomita_verify handles odd dimensions and nearly pure modes") {
  random::Rng rng(67);
  for (Eigen::Index n : {1, 3, 5, 9}) {
    const TomitaResult r = tomita_verify(random::standard_polarisation(rng, n), 20, 3);
    CHECK(r.max_residual <= 1e-9);
    CHECK(r.basis_residual <= 1e-9);
  }
  const double d = 2.0 / std::expm1(64.0);
  const TomitaResult hot = tomita_verify(perturb(vacuum(), Perturbation(diag({d, d}))), 20, 4, 0.0);
  CHECK(hot.max_residual <= 1e-9);
  CHECK(hot.conjugation_residual <= 1e-9);
}

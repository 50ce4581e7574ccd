#include <cmath>

#include "gaussmod/quasiequiv.hpp"
#include "gaussmod/random.hpp"
#include "support.hpp"

using namespace gaussmod;
using namespace testing;
using matops::SchattenP;

namespace {

const SchattenP kAllP[] = {SchattenP::One, SchattenP::Two, SchattenP::Inf};

CanonicalPolarisation vacuum() { return CanonicalPolarisation::from_matrix(-symplectic2()); }

GaussianStateForm symplectic_base() {
  return GaussianStateForm(PreSymplecticSpace(symplectic2()), diag({1, 1}));
}

void check_all_hold(const std::vector<InequalityReport>& reports) {
  for (const auto& r : reports) {
    INFO(r.name << ": lhs=" << r.lhs << " rhs=" << r.rhs);
    CHECK(r.holds);
  }
}

}  // namespace

TEST_CASE("araki_yamagami_quantities examples") {
  const ArakiYamagami a = araki_yamagami_quantities(CMatrix::Zero(2, 2), Perturbation(diag({3, 3})));
  CHECK(a.hs_value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(a.ps_bound.lhs == doctest::Approx(2.0));
  CHECK(a.ps_bound.rhs == doctest::Approx(6.0));
  CHECK(a.ps_bound.holds);
  CHECK(a.norm_one_plus_delta == doctest::Approx(4.0));
  CHECK(a.norm_inverse_one_plus_delta == doctest::Approx(0.25));

  CHECK(araki_yamagami_quantities(CMatrix::Zero(3, 3), Perturbation::zero(3)).hs_value == 0.0);

  // Σ₀ with eigenvalues ±1 commutes with δ = d·1: eigenvalues of the roots are
  // (√d, √(2+d)) against (0, √2).
  for (double d : {1e-6, 0.1, 1.0, 10.0}) {
    const ArakiYamagami v = araki_yamagami_quantities(vacuum().sigma(), Perturbation(diag({d, d})));
    const double expected = d + std::pow(std::sqrt(2 + d) - std::sqrt(2.0), 2);
    CHECK(v.hs_value * v.hs_value == doctest::Approx(expected).epsilon(1e-9));
    CHECK(v.ps_bound.holds);
  }
}

TEST_CASE("araki_yamagami_quantities rejects indefinite 1 + delta + Sigma0") {
  const Perturbation shrink(diag({-0.5, -0.5}), PositivityClass::InvertiblePlusOne);
  try {
    araki_yamagami_quantities(vacuum().sigma(), shrink);
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPSD);
  }
}

TEST_CASE("longo_quantities examples") {
  const CanonicalPolarisation half = CanonicalPolarisation::from_matrix(0.5 * symplectic2());
  const LongoQuantities same = longo_quantities(half, half);
  CHECK(same.inverse_hs == 0.0);
  CHECK(same.inverse_sqrt_hs == 0.0);
  CHECK(same.sqrt_hs == 0.0);

  const CanonicalPolarisation thermal = perturb(vacuum(), Perturbation(diag({1, 1})));
  const LongoQuantities q = longo_quantities(vacuum(), thermal);
  CHECK(q.inverse_hs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(q.inverse_sqrt_hs == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  CHECK(q.sqrt_hs == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));

  double previous = 1e300;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
    const LongoQuantities small = longo_quantities(half, perturb(half, Perturbation(diag({eps, 2 * eps}))));
    const double total = small.inverse_hs + small.inverse_sqrt_hs + small.sqrt_hs;
    CHECK(total < previous);
    previous = total;
  }
  CHECK(previous < 1e-4);

  RMatrix odd = RMatrix::Zero(3, 3);
  odd.block(0, 0, 2, 2) = 0.5 * symplectic2();
  const auto degenerate = CanonicalPolarisation::from_matrix(odd);
  CHECK_THROWS_AS(longo_quantities(degenerate, degenerate), Error);
}

TEST_CASE("Longo decomposition identity holds on random factorial pairs") {
  random::Rng rng(71);
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index n = 2 * rng.uniform_int(1, 16);
    const CanonicalPolarisation p0 = random::standard_polarisation(rng, n);
    const CanonicalPolarisation p1 = perturb(p0, Perturbation(random::psd(rng, n, 0.1)));
    if (!factorial_check(p0).ok || !factorial_check(p1).ok) continue;
    CHECK(longo_decomposition_residual(p0, p1) <= 1e-9);
  }
}

TEST_CASE("verify_R_estimate examples") {
  const GaussianStateForm base = symplectic_base();
  const InequalityReport inf = verify_R_estimate(base, Perturbation(diag({1, 1})), SchattenP::Inf);
  CHECK(inf.lhs == doctest::Approx(0.5));
  CHECK(inf.rhs == doctest::Approx(1.0));
  CHECK(inf.holds);
  const InequalityReport one = verify_R_estimate(base, Perturbation(diag({1, 1})), SchattenP::One);
  CHECK(one.lhs == doctest::Approx(1.0));
  CHECK(one.rhs == doctest::Approx(2.0));
  const InequalityReport zero = verify_R_estimate(base, Perturbation::zero(2), SchattenP::Two);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.holds);
}

TEST_CASE("verify_R_estimate uses the relaxed bound when only 1 + delta > 0") {
  random::Rng rng(73);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = rng.uniform_int(1, 12);
    const CanonicalPolarisation base = random::standard_polarisation(rng, n);
    RMatrix d = random::psd(rng, n, 0.5) - 0.05 * RMatrix::Identity(n, n);
    const Perturbation delta(d, PositivityClass::InvertiblePlusOne);
    for (SchattenP p : kAllP) {
      const InequalityReport r = verify_R_estimate(base, delta, p);
      const double factor = 2.0 / std::sqrt(1.0 + delta.min_eigenvalue());
      CHECK(r.rhs == doctest::Approx(factor * matops::schatten_norm(matops::complexify(d), p)));
      CHECK(r.holds);
    }
  }
}

TEST_CASE("verify_theorem_bounds examples") {
  for (const auto& r : verify_theorem_bounds(symplectic_base(), Perturbation::zero(2))) {
    CHECK(r.lhs == doctest::Approx(0.0));
    CHECK(r.holds);
  }
  const auto v = verify_theorem_bounds(vacuum(), Perturbation(diag({1, 1})));
  REQUIRE(v.size() == 3);
  CHECK(v[0].lhs == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(v[0].rhs == doctest::Approx(4.0));
  CHECK(v[1].lhs == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(v[1].rhs == doctest::Approx(4.0));
  CHECK(v[2].lhs == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(v[2].rhs == doctest::Approx(40.0));
  check_all_hold(v);
}

TEST_CASE("verify_theorem_bounds skips the inverse bounds for singular R0") {
  RMatrix odd = RMatrix::Zero(3, 3);
  odd.block(0, 0, 2, 2) = 0.5 * symplectic2();
  const auto v = verify_theorem_bounds(CanonicalPolarisation::from_matrix(odd), Perturbation(diag({1, 2, 3})));
  REQUIRE(v.size() == 3);
  CHECK_FALSE(v[0].skipped);
  CHECK(v[1].skipped);
  CHECK(v[2].skipped);
  CHECK(v[1].note == "skipped: R0 not invertible");
  CHECK_THROWS_AS(verify_theorem_bounds(symplectic_base(),
                                        Perturbation(diag({-0.5, 0}), PositivityClass::InvertiblePlusOne)),
                  Error);
}

TEST_CASE("verify_theorem_bounds on 1000 random instances up to M = 64") {
  random::Rng rng(79);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = rng.uniform_int(1, 64);
    const GaussianStateForm base = random::base_state(rng, n);
    const double scale = t % 2 ? 0.1 : 1.0;
    for (const auto& r : verify_theorem_bounds(base, Perturbation(random::psd(rng, n, scale)))) {
      if (!r.holds) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("verify_corollary_modular examples") {
  const auto v = verify_corollary_modular(vacuum(), Perturbation(diag({1, 1})));
  // three bounds, the tanh bound, then three route comparisons
  REQUIRE(v.size() == 7);
  CHECK(v[0].lhs == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(v[1].lhs == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(v[2].lhs == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(v[3].name == "modular_tanh_trace_norm_le_trdelta");
  check_all_hold(v);

  const CanonicalPolarisation half = CanonicalPolarisation::from_matrix(0.5 * symplectic2());
  const auto zero = verify_corollary_modular(half, Perturbation::zero(2));
  for (int i = 0; i < 4; ++i) CHECK(std::abs(zero[static_cast<std::size_t>(i)].lhs) < 1e-12);
  check_all_hold(zero);

  try {
    verify_corollary_modular(vacuum(), Perturbation::zero(2));
    FAIL("expected NotStandard");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotStandard);
  }
}

TEST_CASE("modular and R routes agree on random instances") {
  random::Rng rng(83);
  int violations = 0;
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index n = rng.uniform_int(1, 32);
    const CanonicalPolarisation base = random::standard_polarisation(rng, n);
    const auto reports = verify_corollary_modular(base, Perturbation(random::psd(rng, n, 0.1)));
    for (const auto& r : reports) {
      if (!r.holds) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("powers_stormer_check") {
  const InequalityReport r = powers_stormer_check(cdiag({4, 1}), cdiag({1, 0}));
  CHECK(r.lhs == doctest::Approx(2.0));
  CHECK(r.rhs == doctest::Approx(4.0));
  CHECK(r.holds);
  const InequalityReport same = powers_stormer_check(cdiag({2, 5}), cdiag({2, 5}));
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == 0.0);
  CHECK_THROWS_AS(powers_stormer_check(cdiag({-1, 1}), cdiag({1, 1})), Error);

  random::Rng rng(89);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = rng.uniform_int(1, 32);
    const CMatrix a = matops::complexify(random::psd(rng, n, 1.0, rng.uniform_int(1, n)));
    const CMatrix b = matops::complexify(random::psd(rng, n, 1.0, rng.uniform_int(1, n)));
    if (!powers_stormer_check(a, b).holds) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("van_hemmen_ando_check") {
  for (SchattenP p : kAllP) {
    const InequalityReport r = van_hemmen_ando_check(CMatrix::Constant(1, 1, 4.0), CMatrix::Constant(1, 1, 1.0), p);
    CHECK(r.lhs == 3.0);
    CHECK(r.rhs == 3.0);
    CHECK(std::abs(r.margin) <= 1e-12);
    CHECK(r.holds);
    const InequalityReport same = van_hemmen_ando_check(cdiag({1, 3}), cdiag({1, 3}), p);
    CHECK(same.lhs == 0.0);
    CHECK(same.rhs == 0.0);
  }
  random::Rng rng(97);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = rng.uniform_int(1, 32);
    const CMatrix a = matops::complexify(random::psd(rng, n, 1.0, rng.uniform_int(1, n)));
    const CMatrix b = matops::complexify(random::psd(rng, n, 1.0));
    for (SchattenP p : kAllP) {
      if (!van_hemmen_ando_check(a, b, p).holds) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("am_gm_check") {
  random::Rng rng(101);
  const CMatrix x = random::normal_matrix(rng, 5, 5).cast<Complex>();
  for (SchattenP p : kAllP) {
    const InequalityReport eq = am_gm_check(matops::identity(5), matops::identity(5), x, p);
    CHECK(eq.margin == 0.0);
    CHECK(eq.holds);
  }
  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const InequalityReport r = am_gm_check(cdiag({4, 1}), cdiag({1, 4}), swap, SchattenP::Two);
  CHECK(r.lhs == doctest::Approx(std::sqrt(17.0)));
  CHECK(r.rhs == doctest::Approx(std::sqrt(17.0)));
  CHECK(r.holds);

  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = rng.uniform_int(1, 32);
    const CMatrix a = matops::complexify(random::psd(rng, n, 1.0, rng.uniform_int(1, n)));
    const CMatrix b = matops::complexify(random::psd(rng, n, 1.0, rng.uniform_int(1, n)));
    const CMatrix y = random::normal_matrix(rng, n, n).cast<Complex>() +
                      Complex(0, 1) * random::normal_matrix(rng, n, n).cast<Complex>();
    for (SchattenP p : kAllP) {
      if (!am_gm_check(a, b, y, p).holds) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("lipschitz_check") {
  random::Rng rng(103);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = rng.uniform_int(1, 24);
    const CanonicalPolarisation base = random::standard_polarisation(rng, n);
    const Perturbation delta(random::psd(rng, n, 0.3));
    const InequalityReport id = lipschitz_check(matops::maps::identity(), 1.0, base, delta);
    const InequalityReport lemma = verify_R_estimate(base, delta, SchattenP::Two);
    CHECK(id.lhs == doctest::Approx(lemma.lhs).epsilon(1e-12));
    CHECK(id.rhs == lemma.rhs);
    CHECK(id.holds);
    CHECK(lipschitz_check(matops::maps::tanh(), 1.0, base, delta).holds);
    CHECK(lipschitz_check(matops::maps::square(), 2.0, base, delta).holds);
  }
}

TEST_CASE("report helpers") {
  CHECK(make_inequality("a", 1.0 + 5e-10, 1.0).holds);
  CHECK_FALSE(make_inequality("a", 1.0 + 2e-9, 1.0).holds);
  CHECK(make_inequality("a", 100 + 5e-8, 100).holds);
  CHECK_FALSE(make_strict("s", 1.0, 1.0).holds);
  CHECK(make_equality("e", 1.0 + 1e-11, 1.0, 1e-10).holds);
  CHECK_FALSE(make_equality("e", 1.0 + 1e-9, 1.0, 1e-10).holds);
  const InequalityReport s = make_skipped("k", "why");
  CHECK(s.holds);
  CHECK(s.skipped);
  const InequalityReport r = make_inequality("m", 1.0, 3.0);
  CHECK(r.margin == 2.0);
  CHECK(r.relative_slack == doctest::Approx(2.0 / 3.0));
}

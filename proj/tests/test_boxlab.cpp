#include <doctest.h>

#include <cmath>
#include <vector>

#include "uncert/boxlab.hpp"
#include "uncert/rng.hpp"
#include "uncert/scenario.hpp"

using namespace uncert::box;
using uncert::Rng;

namespace {

constexpr double kPi = M_PI;
const Complex kI{0.0, 1.0};

/// Dense-trapezoid reference integral of conj(f)*g sampled pointwise; used to
/// validate the analytic closed-form integrals independently.
Complex dense_reference_integral(const BoxWavefunction& f,
                                 const BoxWavefunction& g, int samples) {
  const double a = f.interval().a;
  const double b = f.interval().b;
  const double h = (b - a) / (samples - 1);
  Complex sum{0.0, 0.0};
  for (int i = 0; i < samples; ++i) {
    const double x = a + h * i;
    const double w = (i == 0 || i == samples - 1) ? 0.5 : 1.0;
    sum += w * std::conj(f.eval(x)) * g.eval(x);
  }
  return sum * h;
}

BoxWavefunction ground_cosine(const BoxInterval& interval) {
  return BoxWavefunction::trig(interval, kPi / interval.length(), 0.0)
      .normalized();
}

}  // namespace

TEST_CASE("eigenvalues of the boundary-law family") {
  const MomentumExtension e1(0.0, BoxInterval::standard(1.0));
  CHECK(eigenvalue(e1, 1) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(eigenvalue(e1, 0) == 0.0);

  const MomentumExtension e2(kPi, BoxInterval::standard(2.0));
  CHECK(eigenvalue(e2, -1) == doctest::Approx(-kPi / 2.0).epsilon(1e-15));
  // Cross-check by applying the momentum rule to the constructed mode.
  const BoxWavefunction u = eigenfunction(e2, -1);
  const Complex mean = inner_product(u, apply_momentum(u, e2));
  CHECK(mean.real() == doctest::Approx(-kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("eigenfunctions: modulus, norm, boundary law") {
  for (const BoxInterval interval :
       {BoxInterval::standard(1.0), BoxInterval::symmetric(1.5)}) {
    const MomentumExtension ext(1.3, interval, 2.0);
    for (const int n : {-2, 0, 3}) {
      const BoxWavefunction u = eigenfunction(ext, n);
      CHECK(std::abs(u.l2_norm() - 1.0) <= 1e-12);
      const double expected_mod = 1.0 / std::sqrt(interval.length());
      for (const double frac : {0.0, 0.25, 0.7, 1.0}) {
        const double x = interval.a + frac * interval.length();
        CHECK(std::abs(u.eval(x)) ==
              doctest::Approx(expected_mod).epsilon(1e-13));
      }
      const DomainVerdict verdict = domain_check(u, ext);
      CHECK(verdict.in_domain);
      CHECK(verdict.residual <= 1e-14);
    }
  }
}

TEST_CASE("inner products") {
  const BoxInterval interval = BoxInterval::standard(1.0);
  const MomentumExtension ext(0.8, interval);

  SUBCASE("orthonormal basis") {
    for (int n = -3; n <= 3; ++n) {
      for (int m = -3; m <= 3; ++m) {
        const Complex ip =
            inner_product(eigenfunction(ext, n), eigenfunction(ext, m));
        const double expected = n == m ? 1.0 : 0.0;
        CHECK(std::abs(ip - expected) <= tol::quad);
      }
    }
  }

  SUBCASE("uniform density: <u|x|u> = l/2") {
    const MomentumExtension flat(0.0, interval);
    const BoxWavefunction u0 = eigenfunction(flat, 0);
    const Complex ip = inner_product(u0, apply_position(u0));
    CHECK(ip.real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(ip.imag()) <= 1e-13);
  }

  SUBCASE("interval mismatch is rejected") {
    const MomentumExtension other(0.8, BoxInterval::standard(2.0));
    CHECK_THROWS_AS(
        inner_product(eigenfunction(ext, 0), eigenfunction(other, 0)),
        uncert::IntervalMismatch);
  }

  SUBCASE("grid size mismatch is rejected") {
    const BoxWavefunction g1 = eigenfunction(ext, 1).to_grid(257);
    const BoxWavefunction g2 = eigenfunction(ext, 1).to_grid(513);
    CHECK_THROWS_AS(inner_product(g1, g2), uncert::GridMismatch);
  }
}

TEST_CASE("analytic monomial-wave integrals against a dense reference") {
  // Exercises both the short-wavelength expansion and the antiderivative
  // branch, including a tiny nonzero frequency.
  const BoxInterval interval = BoxInterval::symmetric(2.0);
  for (const double q : {0.0, 1e-10, 1e-3, 0.4, 3.0, 40.0}) {
    for (const int p : {0, 1, 2}) {
      const ClosedForm term({ClosedFormTerm{Complex{1.0, 0.0}, p, q}});
      const ClosedForm one({ClosedFormTerm{Complex{1.0, 0.0}, 0, 0.0}});
      const BoxWavefunction f = BoxWavefunction::from_closed_form(interval, one);
      const BoxWavefunction g =
          BoxWavefunction::from_closed_form(interval, term);
      const Complex analytic = inner_product(f, g);
      const Complex reference = dense_reference_integral(f, g, 2000001);
      CHECK(std::abs(analytic - reference) <= 1e-8);
    }
  }
}

TEST_CASE("apply_position boundary behavior") {
  SUBCASE("standard case: left wall value vanishes, right does not") {
    const MomentumExtension ext(0.9, BoxInterval::standard(1.0));
    const BoxWavefunction chi = apply_position(eigenfunction(ext, 2));
    CHECK(std::abs(chi.boundary_left()) == 0.0);
    CHECK(std::abs(chi.boundary_right()) ==
          doctest::Approx(1.0).epsilon(1e-13));  // l * 1/sqrt(l), l = 1
  }

  SUBCASE("symmetric case: walls scale by +-l/2") {
    const BoxInterval interval = BoxInterval::symmetric(1.0);
    const MomentumExtension ext(0.9, interval);
    const BoxWavefunction u = eigenfunction(ext, 1);
    const BoxWavefunction xi = apply_position(u);
    CHECK(xi.boundary_left() == -0.5 * u.boundary_left());
    CHECK(xi.boundary_right() == 0.5 * u.boundary_right());
  }

  SUBCASE("zero function stays zero") {
    const BoxWavefunction zero = BoxWavefunction::from_closed_form(
        BoxInterval::standard(1.0), ClosedForm(std::vector<ClosedFormTerm>{}));
    const BoxWavefunction xzero = apply_position(zero);
    CHECK(xzero.l2_norm() == 0.0);
  }
}

TEST_CASE("apply_momentum") {
  const BoxInterval interval = BoxInterval::symmetric(1.0);

  SUBCASE("eigenmode relation, closed form") {
    const MomentumExtension ext(2.1, interval, 0.5);
    for (const int n : {-4, 0, 5}) {
      const BoxWavefunction u = eigenfunction(ext, n);
      const double p = eigenvalue(ext, n);
      const double residual =
          apply_momentum(u, ext).add_scaled(u, Complex{-p, 0.0}).l2_norm();
      CHECK(residual <= 1e-9);
    }
  }

  SUBCASE("wall-vanishing cosine: analytic derivative") {
    const double l = 1.0;
    const double hbar = 1.0;
    const MomentumExtension ext(0.0, interval, hbar);
    const BoxWavefunction f = ground_cosine(interval);
    const BoxWavefunction pf = apply_momentum(f, ext);
    // -i hbar d/dx sqrt(2/l) cos(pi x / l) = i hbar (pi/l) sqrt(2/l) sin(pi x/l)
    for (const double x : {-0.4, -0.1, 0.0, 0.3, 0.45}) {
      const Complex expected = kI * hbar * (kPi / l) * std::sqrt(2.0 / l) *
                               std::sin(kPi * x / l);
      CHECK(std::abs(pf.eval(x) - expected) <= 1e-12);
    }
  }

  SUBCASE("grid differentiation stays within its truncation target") {
    const MomentumExtension ext(0.0, interval);
    const BoxWavefunction f = ground_cosine(interval);
    const BoxWavefunction pf_analytic = apply_momentum(f, ext);
    const BoxWavefunction pf_grid = apply_momentum(f.to_grid(), ext);
    // Compare at the grid nodes, where the samples are exact.
    const int m = pf_grid.grid_size();
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      const double x = interval.a + interval.length() * i / (m - 1.0);
      worst = std::max(worst,
                       std::abs(pf_grid.grid()[i] - pf_analytic.eval(x)));
    }
    CHECK(worst <= tol::diff);
  }

  SUBCASE("constant violates a twisted boundary law") {
    const MomentumExtension ext(1.0, BoxInterval::standard(1.0));
    const BoxWavefunction constant = BoxWavefunction::from_closed_form(
        BoxInterval::standard(1.0),
        ClosedForm({ClosedFormTerm{Complex{1.0, 0.0}, 0, 0.0}}));
    CHECK_THROWS_AS(apply_momentum(constant, ext), uncert::OutOfDomain);
  }
}

TEST_CASE("domain_check and the shift law") {
  SUBCASE("standard case: x removes modes from every domain") {
    const BoxInterval interval = BoxInterval::standard(1.0);
    for (const double theta : {0.0, 0.7, kPi, 5.0}) {
      const MomentumExtension ext(theta, interval);
      for (const int n : {-3, 0, 2}) {
        const DomainVerdict verdict =
            domain_check(apply_position(eigenfunction(ext, n)), ext);
        CHECK(!verdict.in_domain);
        CHECK(!verdict.shifted_theta.has_value());
      }
    }
  }

  SUBCASE("symmetric case: the boundary parameter shifts by pi") {
    const BoxInterval interval = BoxInterval::symmetric(1.0);
    for (const double alpha : {0.3, 0.5, 1.0, 2.0, 3.0}) {
      const MomentumExtension ext(alpha, interval);
      for (int n = -5; n <= 5; ++n) {
        const DomainVerdict verdict =
            domain_check(apply_position(eigenfunction(ext, n)), ext);
        CHECK(!verdict.in_domain);
        REQUIRE(verdict.shifted_theta.has_value());
        CHECK(std::abs(*verdict.shifted_theta - (alpha + kPi)) <= 1e-6);
      }
    }
  }

  SUBCASE("second half of the parameter circle shifts back by pi") {
    const BoxInterval interval = BoxInterval::symmetric(1.0);
    for (const double theta : {4.0, 5.5}) {
      const MomentumExtension ext(theta, interval);
      const DomainVerdict verdict =
          domain_check(apply_position(eigenfunction(ext, 1)), ext);
      CHECK(!verdict.in_domain);
      REQUIRE(verdict.shifted_theta.has_value());
      CHECK(std::abs(*verdict.shifted_theta - (theta - kPi)) <= 1e-6);
    }
  }
}

TEST_CASE("canonical commutator expectation") {
  SUBCASE("standard case: undefined with the offending factor named") {
    const MomentumExtension ext(0.4, BoxInterval::standard(1.0));
    const CommutatorExpectation c =
        commutator_expectation_canonical(eigenfunction(ext, 1), ext);
    CHECK(!c.defined);
    CHECK(c.offending_factor.find("P X") != std::string::npos);
  }

  SUBCASE("symmetric case: undefined for eigenmodes at any parameter") {
    const BoxInterval interval = BoxInterval::symmetric(1.0);
    for (const double theta : {0.0, 0.5, 2.5, 4.5}) {
      const MomentumExtension ext(theta, interval);
      const CommutatorExpectation c =
          commutator_expectation_canonical(eigenfunction(ext, 0), ext);
      CHECK(!c.defined);
    }
  }

  SUBCASE("wall-vanishing state: defined and equal to -i hbar") {
    const BoxInterval interval = BoxInterval::symmetric(1.0);
    const double hbar = 1.0;
    const MomentumExtension ext(1.1, interval, hbar);
    const CommutatorExpectation c =
        commutator_expectation_canonical(ground_cosine(interval), ext);
    REQUIRE(c.defined);
    CHECK(std::abs(c.value - Complex{0.0, -hbar}) <= 1e-10);
    // Cross-check against the boundary-value formula.
    CHECK(std::abs(c.value -
                   xm_commutator_expectation(ground_cosine(interval), hbar)) <=
          1e-10);
  }
}

TEST_CASE("window-constrained position operator") {
  const BoxInterval interval = BoxInterval::symmetric(1.0);
  const MomentumExtension ext(0.7, interval);

  SUBCASE("acts as multiplication by x on supported states") {
    const BoxWavefunction u = eigenfunction(ext, 1);
    const BoxWavefunction xu = xm_apply(u);
    for (const double x : {-0.5, -0.2, 0.0, 0.3, 0.5}) {
      CHECK(std::abs(xu.eval(x) - x * u.eval(x)) <= 1e-14);
    }
    CHECK(std::abs(std::abs(xu.boundary_left()) - 0.5) <= 1e-13);
    CHECK(std::abs(std::abs(xu.boundary_right()) - 0.5) <= 1e-13);
  }

  SUBCASE("standard-variant input is rejected") {
    const MomentumExtension std_ext(0.0, BoxInterval::standard(1.0));
    CHECK_THROWS_AS(xm_apply(eigenfunction(std_ext, 0)),
                    uncert::UnsupportedInterval);
  }

  SUBCASE("zero function maps to zero") {
    const BoxWavefunction zero =
        BoxWavefunction::from_closed_form(interval, ClosedForm(std::vector<ClosedFormTerm>{}));
    CHECK(xm_apply(zero).l2_norm() == 0.0);
  }
}

TEST_CASE("boundary-value commutator formula") {
  const BoxInterval interval = BoxInterval::symmetric(1.0);
  const double hbar = 1.5;

  SUBCASE("eigenmodes give zero") {
    for (const double theta : {0.0, 1.0, 4.0}) {
      const MomentumExtension ext(theta, interval, hbar);
      for (const int n : {-2, 0, 3}) {
        CHECK(std::abs(xm_commutator_expectation(eigenfunction(ext, n),
                                                 hbar)) <= 1e-10);
      }
    }
  }

  SUBCASE("unit-modulus random states give zero") {
    Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
      const BoxWavefunction f =
          random_trig_state(interval, rng, 3, WallConstraint::unit_modulus);
      CHECK(std::abs(xm_commutator_expectation(f, hbar)) <= 1e-10);
    }
  }

  SUBCASE("wall-vanishing states give -i hbar") {
    Rng rng(52);
    for (int trial = 0; trial < 30; ++trial) {
      const BoxWavefunction f =
          random_trig_state(interval, rng, 4, WallConstraint::vanishing);
      CHECK(std::abs(xm_commutator_expectation(f, hbar) -
                     Complex{0.0, -hbar}) <= 1e-10);
    }
  }

  SUBCASE("quadrature route agrees with the formula") {
    Rng rng(53);
    for (int trial = 0; trial < 30; ++trial) {
      const WallConstraint constraint = trial % 2 == 0
                                            ? WallConstraint::vanishing
                                            : WallConstraint::unit_modulus;
      BoxWavefunction f = random_trig_state(interval, rng, 3, constraint);
      if (constraint == WallConstraint::vanishing) f = f.to_grid();
      const Complex formula = xm_commutator_expectation(f, hbar);
      const Complex quad = xm_commutator_quadrature(f, hbar);
      CHECK(std::abs(quad - formula) <= 1e-7);
    }
  }

  SUBCASE("normalization is required") {
    const BoxWavefunction f = ground_cosine(interval).scaled(2.0);
    CHECK_THROWS_AS(xm_commutator_expectation(f, hbar),
                    uncert::NotNormalized);
  }
}

TEST_CASE("uncertainty reports") {
  const BoxInterval interval = BoxInterval::symmetric(1.0);
  const double l = 1.0;
  const double hbar = 1.0;

  SUBCASE("eigenmode report") {
    const MomentumExtension ext(2.3, interval, hbar);
    const BoxUncertaintyReport r =
        xm_uncertainty_report(eigenfunction(ext, 2), ext);
    CHECK(r.delta_x ==
          doctest::Approx(l / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    REQUIRE(r.delta_p.has_value());
    CHECK(*r.delta_p <= 1e-9);
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound <= 1e-10);
    REQUIRE(r.product.has_value());
    CHECK(*r.product <= 1e-9);
    CHECK(r.bound_formula == BoundFormula::xm_boundary_formula);
    CHECK(r.commutator_defined);
    CHECK(r.notes.find("canonical commutator expectation undefined") !=
          std::string::npos);
  }

  SUBCASE("ground cosine report matches the analytic values") {
    const MomentumExtension ext(0.0, interval, hbar);
    const BoxUncertaintyReport r =
        xm_uncertainty_report(ground_cosine(interval), ext);
    const double expected_dx =
        l * std::sqrt(1.0 / 12.0 - 1.0 / (2.0 * kPi * kPi));
    const double expected_dp = hbar * kPi / l;
    CHECK(r.delta_x == doctest::Approx(expected_dx).epsilon(1e-10));
    REQUIRE(r.delta_p.has_value());
    CHECK(*r.delta_p == doctest::Approx(expected_dp).epsilon(1e-10));
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound == doctest::Approx(0.5 * hbar).epsilon(1e-12));
    REQUIRE(r.product.has_value());
    CHECK(*r.product >= *r.bound - tol::quad);
    CHECK(*r.product ==
          doctest::Approx(expected_dx * expected_dp).epsilon(1e-10));
  }

  SUBCASE("unit-modulus states: zero bound, nonnegative product") {
    Rng rng(54);
    const MomentumExtension ext(0.0, interval, hbar);
    const BoxWavefunction f =
        random_trig_state(interval, rng, 3, WallConstraint::unit_modulus);
    const BoxUncertaintyReport r = xm_uncertainty_report(f, ext);
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound <= 1e-10);
    CHECK(r.delta_x >= 0.0);
  }

  SUBCASE("state outside the extension domain: no momentum deviation") {
    const MomentumExtension ext_a(0.5, interval, hbar);
    const MomentumExtension ext_b(1.5, interval, hbar);
    const BoxWavefunction u = eigenfunction(ext_a, 0);
    const BoxUncertaintyReport r = xm_uncertainty_report(u, ext_b);
    CHECK(!r.delta_p.has_value());
    CHECK(!r.product.has_value());
    REQUIRE(r.bound.has_value());  // the boundary formula is still defined
    CHECK(*r.bound <= 1e-10);
    CHECK(r.notes.find("momentum deviation unavailable") != std::string::npos);
  }

  SUBCASE("canonical report carries no bound when undefined") {
    const MomentumExtension ext(1.2, BoxInterval::standard(1.0), hbar);
    const BoxUncertaintyReport r =
        canonical_uncertainty_report(eigenfunction(ext, 1), ext);
    CHECK(!r.commutator_defined);
    CHECK(!r.bound.has_value());
    CHECK(r.bound_formula == BoundFormula::undefined);
    CHECK(r.delta_x ==
          doctest::Approx(l / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    REQUIRE(r.delta_p.has_value());
    CHECK(*r.delta_p <= 1e-9);
  }

  SUBCASE("canonical report for a wall-vanishing state") {
    const MomentumExtension ext(0.0, interval, hbar);
    const BoxUncertaintyReport r =
        canonical_uncertainty_report(ground_cosine(interval), ext);
    CHECK(r.commutator_defined);
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound == doctest::Approx(0.5 * hbar).epsilon(1e-10));
    CHECK(r.bound_formula == BoundFormula::canonical_half_hbar);
  }
}

TEST_CASE("quadrature convergence is fourth order") {
  const BoxInterval interval = BoxInterval::symmetric(1.0);
  // Incommensurate wavenumbers, even nonzero integrand: an oscillation with
  // integer periods over the box (or an odd integrand on the symmetric grid)
  // would make the composite rule spuriously exact and hide the h^4 decay.
  const ClosedForm oscillatory({ClosedFormTerm{Complex{1.0, 0.0}, 0, 7.1},
                                ClosedFormTerm{Complex{0.0, 0.4}, 1, -3.3}});
  const BoxWavefunction f =
      BoxWavefunction::from_closed_form(interval, oscillatory);

  const Complex analytic = inner_product(f, f);
  const Complex coarse = inner_product(f.to_grid(65), f.to_grid(65));
  const Complex fine = inner_product(f.to_grid(129), f.to_grid(129));

  const double err_coarse = std::abs(coarse - analytic);
  const double err_fine = std::abs(fine - analytic);
  REQUIRE(err_fine > 0.0);
  CHECK(err_coarse / err_fine >= 8.0);
}

TEST_CASE("wavefunction serialization round trips") {
  using uncert::cli::wavefunction_from_json;
  using uncert::cli::wavefunction_to_json;

  SUBCASE("closed form") {
    const MomentumExtension ext(1.7, BoxInterval::symmetric(2.0));
    const BoxWavefunction u = eigenfunction(ext, 3);
    const BoxWavefunction back = wavefunction_from_json(wavefunction_to_json(u));
    CHECK(back.is_closed_form());
    CHECK(std::abs(back.boundary_left() - u.boundary_left()) == 0.0);
    CHECK(std::abs(inner_product(u, back) - Complex{1.0, 0.0}) <= tol::quad);
  }

  SUBCASE("grid") {
    Rng rng(55);
    const BoxWavefunction f = random_trig_state(
        BoxInterval::symmetric(1.0), rng, 3, WallConstraint::unit_modulus);
    const BoxWavefunction back = wavefunction_from_json(wavefunction_to_json(f));
    REQUIRE(back.grid_size() == f.grid_size());
    for (int i = 0; i < f.grid_size(); ++i) {
      CHECK(back.grid()[i] == f.grid()[i]);
    }
  }

  SUBCASE("malformed records are rejected") {
    uncert::Json bad = wavefunction_to_json(ground_cosine(BoxInterval::symmetric(1.0)));
    bad["interval"]["variant"] = "круг";
    CHECK_THROWS_AS(wavefunction_from_json(bad), uncert::SchemaError);
  }
}

TEST_CASE("grid construction validation") {
  CHECK_THROWS_AS(BoxWavefunction::from_grid(BoxInterval::standard(1.0),
                                             std::vector<Complex>(4)),
                  uncert::GridMismatch);
  CHECK_THROWS_AS(BoxWavefunction::from_grid(BoxInterval::standard(1.0),
                                             std::vector<Complex>(6)),
                  uncert::GridMismatch);
}

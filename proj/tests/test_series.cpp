#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rotmap/series.hpp"

using namespace rotmap;

namespace {
constexpr double kP = -24.846;
// remainder envelope for the order-4 truncations; the true fifth-order
// coefficient of the exact-update series is 90
constexpr double kRemainderC = 120.0;

double remainder_bound(double theta, double omega, double p_value) {
  const double x = std::fabs(p_value * std::sin(theta));
  return kRemainderC * std::pow(x, 5) / std::pow(omega, 9);
}
}  // namespace

TEST_CASE("series_positive vanishes into omega at theta = 0") {
  for (int order = 1; order <= 4; ++order) {
    CHECK(series_positive(0.0, 7.3, kP, order) == 7.3);
    CHECK(series_invariant(0.0, 7.3, kP, order) == 7.3);
    CHECK(series_negative(0.0, 7.3, kP, order) == 0.0);
  }
}

TEST_CASE("order validation") {
  CHECK_THROWS_AS(series_positive(0.1, 30.0, kP, 0), std::invalid_argument);
  CHECK_THROWS_AS(series_positive(0.1, 30.0, kP, 5), std::invalid_argument);
}

TEST_CASE("series_positive order 4 tracks the exact update") {
  for (const double omega : {30.0, 60.0, 100.0}) {
    for (const double theta : {pi / 2.0, 0.9, 2.4}) {
      const auto exact = solve_roots(theta, omega, kP);
      REQUIRE(exact.has_value());
      const double s4 = series_positive(theta, omega, kP, 4);
      CHECK(std::fabs(s4 - exact->positive) <=
            remainder_bound(theta, omega, kP));
    }
  }
}

TEST_CASE("series_negative order 4 tracks the exact negative root") {
  for (const double omega : {30.0, 60.0, 100.0}) {
    const auto exact = solve_roots(pi / 2.0, omega, kP);
    REQUIRE(exact.has_value());
    const double s4 = series_negative(pi / 2.0, omega, kP, 4);
    CHECK(std::fabs(s4 - exact->negative) <=
          remainder_bound(pi / 2.0, omega, kP));
  }
  // leading term: -P sin/omega = |P|/omega = 0.8282 for this P at pi/2;
  // the next correction is O(1/omega^3)
  CHECK(series_negative(pi / 2.0, 30.0, kP, 1) ==
        doctest::Approx(24.846 / 30.0).epsilon(1e-12));
  CHECK(series_negative(pi / 2.0, 30.0, kP, 4) ==
        doctest::Approx(0.8781474924).epsilon(1e-4));
}

TEST_CASE("series_invariant order 4 tracks the invariant update") {
  for (const double omega : {30.0, 60.0, 100.0}) {
    const double exact = invariant_step(pi / 2.0, omega, kP);
    const double s4 = series_invariant(pi / 2.0, omega, kP, 4);
    CHECK(std::fabs(s4 - exact) <= remainder_bound(pi / 2.0, omega, kP));
  }
}

TEST_CASE("series_invariant equals series_positive through order 2") {
  for (int order = 1; order <= 2; ++order)
    for (const double omega : {12.0, 30.0, 55.0})
      CHECK(series_invariant(1.1, omega, kP, order) ==
            series_positive(1.1, omega, kP, order));
  CHECK(series_invariant(1.1, 30.0, kP, 3) != series_positive(1.1, 30.0, kP, 3));
}

TEST_CASE("order refinement at a convergent point") {
  const auto exact = solve_roots(pi / 2.0, 30.0, kP);
  REQUIRE(exact.has_value());
  const double e1 = std::fabs(series_positive(pi / 2.0, 30.0, kP, 1) - exact->positive);
  const double e2 = std::fabs(series_positive(pi / 2.0, 30.0, kP, 2) - exact->positive);
  const double e3 = std::fabs(series_positive(pi / 2.0, 30.0, kP, 3) - exact->positive);
  const double e4 = std::fabs(series_positive(pi / 2.0, 30.0, kP, 4) - exact->positive);
  CHECK(e2 < e1);
  CHECK(e3 < e2);
  CHECK(e4 < e3);
}

TEST_CASE("truncation-order dominance for omega >= 10 sqrt(|P|)") {
  const double omega = 10.0 * std::sqrt(std::fabs(kP));
  const double r = kP * std::sin(pi / 2.0) / (omega * omega);
  const double terms[4] = {2.0 * r, -2.0 * r * r, 6.0 * r * r * r,
                           -22.0 * r * r * r * r};
  for (int n = 0; n < 3; ++n)
    CHECK(std::fabs(terms[n + 1]) < std::fabs(terms[n]));
}

TEST_CASE("root-sum identity") {
  for (const double omega : {6.0, 9.5, 13.0, 30.0}) {
    for (const double theta : {0.4, pi / 2.0, 2.0, 4.5}) {
      const auto r = solve_roots(theta, omega, kP);
      if (!r) continue;
      const double x = kP * std::sin(theta);
      CHECK(r->positive + r->negative ==
            doctest::Approx(omega + x / omega).epsilon(1e-12));
    }
  }
  // truncated series sum telescopes to omega + P sin/omega exactly
  for (const double omega : {30.0, 60.0}) {
    const double x = kP * std::sin(1.3);
    const double sum = series_positive(1.3, omega, kP, 4) +
                       series_negative(1.3, omega, kP, 4);
    CHECK(sum == doctest::Approx(omega + x / omega).epsilon(1e-14));
  }
}

TEST_CASE("convergence-domain honesty") {
  // On the drifted small-omega state of the N=3 reference orbit the exact
  // step still succeeds while both expansions refuse the input.
  const double P = compute_p(two_pi / 3.0, 9.81, 1.0, -1);
  const double theta = 4.0 * pi / 3.0;
  const double omega = 7.2319;
  CHECK_FALSE(exact_series_converges(theta, omega, P));
  CHECK_THROWS_AS(series_positive(theta, omega, P, 4), std::domain_error);
  CHECK_THROWS_AS(series_negative(theta, omega, P, 2), std::domain_error);
  const auto r = solve_roots(theta, omega, P);
  REQUIRE(r.has_value());
  CHECK(r->positive > 0.0);

  // same situation on the assumption-violating positive-P orbit
  const double Ppos = -P;
  CHECK_FALSE(exact_series_converges(two_pi / 3.0, 4.0, Ppos));
  CHECK_THROWS_AS(series_positive(two_pi / 3.0, 4.0, Ppos, 4),
                  std::domain_error);
  CHECK(solve_roots(two_pi / 3.0, 4.0, Ppos).has_value());

  CHECK_THROWS_AS(series_invariant(pi / 2.0, 4.0, P, 2), std::domain_error);
}

TEST_CASE("one_step_deviation") {
  const double P = compute_p(two_pi / 3.0, 9.81, 1.0, -1);
  SUBCASE("zero at the fixed angles") {
    CHECK(one_step_deviation(0.0, 12.0, P) == 0.0);
    CHECK(one_step_deviation(pi, 12.0, P) == 0.0);
  }
  SUBCASE("halving the kick ratio by doubling omega shrinks it ~32x") {
    const double d30 = one_step_deviation(pi / 2.0, 30.0, P);
    const double d60 = one_step_deviation(pi / 2.0, 60.0, P);
    const double ratio = d30 / d60;
    CHECK(ratio > 32.0 * 0.8);
    CHECK(ratio < 32.0 * 1.2);
  }
  SUBCASE("sign equals sign of 2 P^3 where the leading term dominates") {
    CHECK(one_step_deviation(pi / 2.0, 100.0, P) < 0.0);  // P < 0
    CHECK(one_step_deviation(pi / 2.0, 100.0, -P) > 0.0);
  }
  SUBCASE("propagates convergence errors") {
    CHECK_THROWS_AS(one_step_deviation(pi / 2.0, 5.0, P), std::domain_error);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dsl/asymptotics.hpp"
#include "dsl/operators.hpp"

using namespace dsl;

TEST_CASE("Poschl-Teller parameter") {
  CHECK(s_parameter(1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s_parameter(2.0, 2.0) == doctest::Approx(1.5).epsilon(1e-14));
  // at mu = 2 the parameter is (p+1)/p
  for (double p : {0.3, 0.5, 1.7, 4.0})
    CHECK(s_parameter(p, 2.0) == doctest::Approx((p + 1.0) / p).epsilon(1e-13));
  // defining quadratic holds to 1e-12
  for (double p : {0.4, 1.0, 2.3})
    for (double mu : {0.0, 0.7, 2.0}) {
      const double s = s_parameter(p, mu);
      CHECK(std::abs(s * (s + 1.0) - (p + 1.0) / (p * p) * (1.0 + p * mu)) < 1e-12);
    }
  // large-p limit at mu = 0 tends to zero from above
  CHECK(s_parameter(1e8, 0.0) > 0.0);
  CHECK(s_parameter(1e8, 0.0) < 1e-7);
}

TEST_CASE("Poschl-Teller levels") {
  const auto l2 = pt_levels(2.0);
  REQUIRE(l2.size() == 2);
  CHECK(l2[0] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(l2[1] == doctest::Approx(-0.5).epsilon(1e-14));

  const auto l15 = pt_levels(1.5);
  REQUIRE(l15.size() == 2);
  CHECK(l15[0] == doctest::Approx(-1.125).epsilon(1e-14));
  CHECK(l15[1] == doctest::Approx(-0.125).epsilon(1e-14));

  for (double s : {0.3, 1.0, 2.7, 5.5}) {
    const auto levels = pt_levels(s);
    CHECK(static_cast<int>(levels.size()) == static_cast<int>(std::ceil(s - 1e-12)));
    for (size_t j = 0; j < levels.size(); ++j) {
      CHECK(levels[j] < 0.0);  // the last level stays strictly negative
      if (j > 0) CHECK(levels[j] > levels[j - 1]);
    }
  }
}

TEST_CASE("leading-order eigenvalue predictions") {
  const double kappa = 0.3;
  const ModelParams p1{1.0, 1.0, std::sqrt(1.0 - kappa * kappa), 2.0};
  CHECK(lambda_expansion(p1, 1) ==
        doctest::Approx(-1.5 * kappa * kappa).epsilon(1e-12));
  CHECK(lambda_expansion(p1, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(lambda_expansion(p1, 3), std::invalid_argument);
  CHECK_THROWS_AS(lambda_expansion(p1, 0), std::invalid_argument);

  const ModelParams phalf{1.0, 0.5, std::sqrt(1.0 - kappa * kappa), 2.0};
  CHECK(lambda_expansion(phalf, 3) ==
        doctest::Approx(0.375 * kappa * kappa).epsilon(1e-12));

  const ExpansionLadder ladder = build_ladder(phalf);
  CHECK(ladder.ceil_s == 3);
  for (size_t i = 1; i < ladder.levels.size(); ++i) {
    CHECK(ladder.levels[i].lambda_k > ladder.levels[i - 1].lambda_k);
    CHECK(ladder.levels[i].pt_level > ladder.levels[i - 1].pt_level);
  }
}

TEST_CASE("ladder against the computed spectrum, p = 1") {
  const double kappa = 0.1;
  const ModelParams params{1.0, 1.0, std::sqrt(1.0 - kappa * kappa), 2.0};
  const Grid grid = Grid::sized_for(params, 512);
  const ComparisonTable table = compare_to_spectrum(params, grid);
  CHECK(table.expected_min == 2);
  CHECK(table.count_ok);
  REQUIRE(static_cast<int>(table.rows.size()) >= 2);
  // lambda_1 within the O(kappa) relative remainder
  CHECK(table.rows[0].rel_err < 0.2);
  // lambda_2 is exactly zero; compare against the exact eigenvalue
  CHECK(std::abs(table.rows[1].computed) < 1e-8);
  // ladder ordering
  for (size_t i = 1; i < table.rows.size(); ++i)
    CHECK(table.rows[i].computed > table.rows[i - 1].computed);
}

TEST_CASE("first eigenvalue beyond the ladder hugs the gap edge for p >= 1") {
  // s = 1.5 at p = 2: a third gap eigenvalue, when the box resolves one,
  // must sit within O(kappa^3) of m - omega
  const double kappa = 0.05;
  const ModelParams params{1.0, 2.0, std::sqrt(1.0 - kappa * kappa), 2.0};
  const Grid grid = Grid::sized_for(params, 512);
  const ComparisonTable table = compare_to_spectrum(params, grid);
  CHECK(table.count_ok);
  if (table.has_lambda_next) {
    CHECK(table.lambda_next >= 1.0 - params.omega - 0.01 * kappa * kappa);
  }
}

TEST_CASE("ladder count for small p at mu = 2") {
  // s = (p+1)/p = 3 at p = 0.5: at least three gap eigenvalues above -2 omega
  const double kappa = 0.1;
  const ModelParams params{1.0, 0.5, std::sqrt(1.0 - kappa * kappa), 2.0};
  const Grid grid = Grid::sized_for(params, 512);
  const ComparisonTable table = compare_to_spectrum(params, grid);
  CHECK(table.expected_min == 3);
  CHECK(table.gap_count >= 3);
  CHECK(table.count_ok);
  REQUIRE(static_cast<int>(table.rows.size()) == 3);
  CHECK(table.rows[2].rel_err < 0.25);  // lambda_3 = p(2-p) kappa^2/2
}

TEST_CASE("sup-norm pairs match refined grid maxima") {
  for (const ModelParams params :
       {ModelParams{1.0, 1.0, 0.5, 2.0}, ModelParams{1.0, 2.0, 0.8, 2.0}}) {
    const auto pairs = appendix_sup_norms(params);
    // closed form of the density supremum is attained at x = 0
    CHECK(std::abs(pairs[0].grid_max - (params.p + 1.0) * (params.m - params.omega)) <
          1e-10);
    CHECK(pairs[0].x_grid < 1e-3);
    for (const auto& pair : pairs) {
      CAPTURE(pair.name);
      CHECK(std::abs(pair.closed - pair.grid_max) <= 1e-8 * pair.closed);
      CHECK(std::abs(pair.x_analytic - pair.x_grid) < 1e-4);
    }
  }
}

TEST_CASE("sup-norm closed forms at a hand-checked point") {
  // m = 1, omega = 0.5, p = 1: nu = 1/3
  const ModelParams params{1.0, 1.0, 0.5, 2.0};
  const auto pairs = appendix_sup_norms(params);
  CHECK(pairs[0].closed == doctest::Approx(1.0).epsilon(1e-14));  // 2 * 0.5
  // (p+1)(m-omega)^2/(8 omega) = 2 * 0.25 / 4 = 0.125
  CHECK(pairs[2].closed == doctest::Approx(0.125).epsilon(1e-14));
  // (p+1) kappa^2/m (sqrt m - sqrt w)/(sqrt m + sqrt w), kappa^2 = 0.75
  const double sw = std::sqrt(0.5);
  CHECK(pairs[3].closed ==
        doctest::Approx(1.5 * (1.0 - sw) / (1.0 + sw)).epsilon(1e-14));
}

TEST_CASE("kappa scaling of the lambda_1 prediction error") {
  // The remainder of the leading-order prediction is at worst cubic in kappa,
  // i.e. at least linear in the relative error. For p = 1 the cubic term
  // vanishes and the measured relative error is quadratic (halving kappa
  // quarters it), so assert the honest bracket around both behaviours.
  double prev_err = -1.0;
  for (double kappa : {0.2, 0.1, 0.05}) {
    const ModelParams params{1.0, 1.0, std::sqrt(1.0 - kappa * kappa), 2.0};
    const Grid grid = Grid::sized_for(params, 512);
    const ComparisonTable table = compare_to_spectrum(params, grid);
    REQUIRE(!table.rows.empty());
    const double err = table.rows[0].rel_err;
    if (prev_err > 0.0) {
      const double ratio = err / prev_err;
      CHECK(ratio > 0.15);
      CHECK(ratio < 0.55);
    }
    prev_err = err;
  }
}

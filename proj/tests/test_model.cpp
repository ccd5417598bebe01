#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dsl/model.hpp"
#include "dsl/params.hpp"
#include "dsl/quadrature.hpp"

using namespace dsl;

namespace {

// Trapezoid-rule oracle for ||phi0||^2 on a wide fine grid: the integrand is
// smooth, even and exponentially decaying, so the trapezoid rule converges
// geometrically. Kept independent of the tanh-sinh path it checks.
double l2_norm_sq_trapezoid(const ModelParams& params) {
  const double half_width = 30.0 / (params.p * params.kappa());
  const int n = 1 << 16;
  const double h = 2.0 * half_width / n;
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double x = -half_width + j * h;
    const SolitonSample s = soliton_eval(params, x);
    const double f = s.v * s.v + s.u * s.u;
    sum += (j == 0 || j == n) ? 0.5 * f : f;
  }
  return sum * h;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("derived parameters") {
  CHECK(derived({1.0, 1.0, 0.6, 2.0}).kappa == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(derived({1.0, 1.0, 0.6, 2.0}).nu == doctest::Approx(0.25).epsilon(1e-15));
  // scaling m -> 2m, omega -> 2 omega doubles kappa, keeps nu
  CHECK(derived({2.0, 1.0, 1.2, 2.0}).kappa == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(derived({2.0, 1.0, 1.2, 2.0}).nu == doctest::Approx(0.25).epsilon(1e-15));
  // limit omega -> m
  const auto d = derived({1.0, 1.0, 1.0 - 1e-12, 2.0});
  CHECK(d.kappa < 2e-6);
  CHECK(d.nu < 1e-12);
  CHECK(d.kappa > 0.0);

  CHECK_THROWS_AS(derived({1.0, 1.0, 1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(derived({1.0, 1.0, -0.1, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(derived({1.0, 0.0, 0.5, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(derived({1.0, 1.0, 0.5, -1.0}), std::invalid_argument);
}

TEST_CASE("profile at the origin") {
  const ModelParams params{1.0, 1.0, 0.6, 2.0};
  const SolitonSample s = soliton_eval(params, 0.0);
  CHECK(s.v == doctest::Approx(std::sqrt(0.8)).epsilon(1e-14));
  CHECK(s.u == 0.0);
  CHECK(s.density_p == doctest::Approx(0.8).epsilon(1e-14));

  // v(0) = ((p+1)(m-omega))^{1/(2p)} for several powers
  for (double p : {0.5, 2.0, 3.0}) {
    ModelParams q{1.0, p, 0.45, 2.0};
    const SolitonSample t = soliton_eval(q, 0.0);
    CHECK(t.v ==
          doctest::Approx(std::pow((p + 1.0) * 0.55, 1.0 / (2.0 * p))).epsilon(1e-14));
    CHECK(t.u == 0.0);
  }
}

TEST_CASE("density closed form vs direct v^2-u^2 at moderate x") {
  // oracle: (v^2-u^2)^p from the sampled components; valid while the
  // subtraction is well-conditioned
  const ModelParams params{1.0, 2.0, 0.5, 2.0};
  for (double z : {-5.0, -2.0, -0.5, 0.0, 0.7, 1.3, 3.1, 5.0}) {
    const double x = z / (params.p * params.kappa());
    const SolitonSample s = soliton_eval(params, x);
    const double direct = std::pow(s.v * s.v - s.u * s.u, params.p);
    CHECK(rel_err(s.density_p, direct) < 1e-12);
  }
}

TEST_CASE("density value from independent high-precision evaluation") {
  // (m=1, p=1, omega=0.6, x=1): v^2-u^2 = 0.8 (1-tanh^2 0.8)/(1-0.25 tanh^2 0.8)
  const ModelParams params{1.0, 1.0, 0.6, 2.0};
  const double t = std::tanh(0.8);
  const double expected = 0.8 * (1.0 - t * t) / (1.0 - 0.25 * t * t);
  const SolitonSample s = soliton_eval(params, 1.0);
  CHECK(rel_err(s.v * s.v - s.u * s.u, expected) < 1e-14);
  CHECK(rel_err(s.density_p, expected) < 1e-14);
}

TEST_CASE("density bounds and decay") {
  const ModelParams params{1.0, 2.0, 0.5, 2.0};
  const double sup = (params.p + 1.0) * (params.m - params.omega);
  CHECK(density_power(params, 0.0) == doctest::Approx(sup).epsilon(1e-14));
  double prev = sup;
  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double d = density_power(params, x);
    CHECK(d > 0.0);
    CHECK(d < prev);  // strictly decreasing away from the maximum at 0
    prev = d;
  }
  // tail decay rate 2 p kappa in the tanh argument
  const double x1 = 6.0 / (params.p * params.kappa());
  const double x2 = x1 + 1.0;
  const double ratio = density_power(params, x2) / density_power(params, x1);
  CHECK(rel_err(ratio, std::exp(-2.0 * params.p * params.kappa())) < 1e-3);
  CHECK(density_power(params, 1e3) < 1e-15);
}

TEST_CASE("effective mass") {
  const ModelParams params{1.0, 1.0, 0.9, 2.0};
  CHECK(effective_mass(params, 0.0) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(effective_mass(params, 1e4) == doctest::Approx(1.0).epsilon(1e-14));
  const ModelParams q{1.0, 2.0, 0.5, 2.0};
  CHECK(effective_mass(q, 0.0) ==
        doctest::Approx(q.m - (q.p + 1.0) * (q.m - q.omega)).epsilon(1e-14));
}

TEST_CASE("parity is exact") {
  const ModelParams params{1.0, 1.5, 0.7, 2.0};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> X(0.0, 15.0);
  for (int i = 0; i < 200; ++i) {
    const double x = X(rng);
    const SolitonSample sp = soliton_eval(params, x);
    const SolitonSample sm = soliton_eval(params, -x);
    CHECK(sp.v == sm.v);
    CHECK(sp.u == -sm.u);
    CHECK(sp.density_p == sm.density_p);
  }
}

TEST_CASE("ODE residual of the closed forms") {
  // v' + (M+omega) u = 0 and u' + (M-omega) v = 0 with analytic derivatives
  for (const ModelParams params :
       {ModelParams{1.0, 1.0, 0.5, 2.0}, ModelParams{1.0, 0.5, 0.9, 2.0},
        ModelParams{1.0, 3.0, 0.7, 2.0}, ModelParams{2.0, 2.0, 1.1, 2.0}}) {
    const double sup_v = soliton_eval(params, 0.0).v;
    double worst = 0.0;
    const int n = 801;
    for (int i = 0; i < n; ++i) {
      const double x = (-20.0 + 40.0 * i / (n - 1)) / (params.p * params.kappa());
      const SolitonSample s = soliton_eval(params, x);
      const SolitonDerivatives d = soliton_derivatives(params, x);
      const double r1 = d.dv + (s.M + params.omega) * s.u;
      const double r2 = d.du + (s.M - params.omega) * s.v;
      worst = std::max(worst, std::max(std::abs(r1), std::abs(r2)));
    }
    CHECK(worst / (params.m * sup_v) < 1e-10);
  }
}

TEST_CASE("pointwise Hamiltonian constraint") {
  // (omega (v^2+u^2) - m (v^2-u^2) + F(v^2-u^2)) / 2 = 0, F(s) = s^{p+1}/(p+1)
  for (const ModelParams params :
       {ModelParams{1.0, 1.0, 0.5, 2.0}, ModelParams{1.0, 2.5, 0.8, 2.0}}) {
    for (double z : {-18.0, -6.0, -1.0, 0.0, 0.3, 2.0, 9.0, 19.0}) {
      const double x = z / (params.p * params.kappa());
      const SolitonSample s = soliton_eval(params, x);
      const double d = std::pow(s.density_p, 1.0 / params.p);  // v^2 - u^2
      const double sum_sq = s.v * s.v + s.u * s.u;
      const double F = std::pow(d, params.p + 1.0) / (params.p + 1.0);
      const double h = 0.5 * (params.omega * sum_sq - params.m * d + F);
      CHECK(std::abs(h) < 1e-13 * params.m * std::max(1.0, sum_sq));
    }
  }
}

TEST_CASE("L2 norm against trapezoid oracle") {
  const ModelParams params{1.0, 1.0, 0.5, 2.0};
  const L2NormResult got = soliton_l2_norm_sq(params);
  CHECK(got.converged);
  CHECK(got.value > 0.0);
  CHECK(rel_err(got.value, l2_norm_sq_trapezoid(params)) < 1e-8);

  // two more powers, including a singular endpoint exponent (p > 1)
  for (const ModelParams q :
       {ModelParams{1.0, 2.0, 0.7, 2.0}, ModelParams{1.0, 0.5, 0.4, 2.0}}) {
    const L2NormResult r = soliton_l2_norm_sq(q);
    CHECK(r.converged);
    CHECK(rel_err(r.value, l2_norm_sq_trapezoid(q)) < 1e-8);
  }
}

TEST_CASE("norm decreases towards the non-relativistic limit for p <= 2") {
  for (double p : {1.0, 2.0}) {
    double prev = 1e300;
    for (double w : {0.97, 0.98, 0.99}) {
      const ModelParams params{1.0, p, w, 2.0};
      const double n = soliton_l2_norm_sq(params).value;
      CHECK(n < prev);
      prev = n;
    }
  }
}

TEST_CASE("omega-continuity of the profile") {
  // jumps in a finite-difference omega sweep stay proportional to the step
  const double x = 1.7;
  const int steps = 400;
  const double dw = 0.9 / steps;
  for (double p : {0.5, 1.0, 3.0}) {
    double prev_v = 0.0, prev_u = 0.0;
    bool first = true;
    for (int i = 0; i <= steps; ++i) {
      const ModelParams params{1.0, p, 0.05 + 0.9 * i / steps, 2.0};
      const SolitonSample s = soliton_eval(params, x);
      if (!first) {
        CHECK(std::abs(s.v - prev_v) < 50.0 * dw);
        CHECK(std::abs(s.u - prev_u) < 50.0 * dw);
      }
      prev_v = s.v;
      prev_u = s.u;
      first = false;
    }
  }
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  // int_0^1 (1-y^2)^{-1/2} dy = pi/2, integrable singularity at y = 1
  const QuadResult q = tanh_sinh_01(
      [](double y, double omy) { return 1.0 / std::sqrt(omy * (1.0 + y)); });
  CHECK(q.converged);
  CHECK(rel_err(q.value, 1.5707963267948966) < 1e-12);

  // smooth case: int_0^1 y^3 dy
  const QuadResult s = tanh_sinh_01([](double y, double) { return y * y * y; });
  CHECK(s.converged);
  CHECK(rel_err(s.value, 0.25) < 1e-12);

  // half-line: int_0^inf e^{-x} dx = 1
  const QuadResult e = tanh_sinh_0inf([](double x) { return std::exp(-x); });
  CHECK(e.converged);
  CHECK(rel_err(e.value, 1.0) < 1e-12);
}

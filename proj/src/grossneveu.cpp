#include "dsl/grossneveu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsl/model.hpp"
#include "dsl/operators.hpp"
#include "dsl/rootfind.hpp"
#include "dsl/stability.hpp"

namespace dsl {

namespace {

void require_p1(const ModelParams& params) {
  if (params.p != 1.0)
    throw std::invalid_argument("Gross-Neveu resonances require p = 1, got p = " +
                                std::to_string(params.p));
}

double sech2_of(double z) {
  const double e = std::exp(-2.0 * std::abs(z));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

const double kThetaPlus0 = 3.0 * std::sqrt(3.0) / 8.0;

}  // namespace

ResonanceSample resonance_profiles(const ModelParams& params, double x) {
  params.validate();
  require_p1(params);
  const double nu = params.nu();
  const double z = params.kappa() * x;
  const double T = std::tanh(z);
  const double den = 1.0 - nu * T * T;
  const double r = std::sqrt(nu) * T / den;
  const double s = -nu / (1.0 - nu) * sech2_of(z) / den;
  return {x, r, s};
}

ResonanceResidual resonance_residual(const ModelParams& params, int n_samples) {
  params.validate();
  require_p1(params);
  const double nu = params.nu();
  const double kappa = params.kappa();
  const double m = params.m;
  const double window = 20.0 / kappa;

  double max_rs = 0.0, max_sr = 0.0, scale = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double x = -window + 2.0 * window * i / (n_samples - 1);
    const double z = kappa * x;
    const double T = std::tanh(z);
    const double s2 = sech2_of(z);
    const double den = 1.0 - nu * T * T;

    const double r = std::sqrt(nu) * T / den;
    const double s = -nu / (1.0 - nu) * s2 / den;
    // analytic x-derivatives of the rescaled closed forms
    const double dr = kappa * std::sqrt(nu) * s2 * (1.0 + nu * T * T) / (den * den);
    const double ds = kappa * 2.0 * nu * T * s2 / (den * den);
    const double f = density_power(params, x);  // (v^2-u^2) for p = 1

    // rows of (L_0 - (m-omega)) (R,S)^T
    const double res1 = ds - f * r;
    const double res2 = -dr + (f - 2.0 * m) * s;
    // rows of (L_0 + (m+omega)) (S,R)^T
    const double res3 = dr + (2.0 * m - f) * s;
    const double res4 = f * r - ds;

    max_rs = std::max(max_rs, std::max(std::abs(res1), std::abs(res2)));
    max_sr = std::max(max_sr, std::max(std::abs(res3), std::abs(res4)));
    scale = std::max(scale, std::max(std::abs(r), std::abs(s)));
  }
  const double norm = std::max(scale * m, 1e-300);
  return {max_rs / norm, max_sr / norm};
}

GnSpectrumCheck verify_L0_spectrum_p1(const ModelParams& params, const Grid& grid,
                                      double tol) {
  params.validate();
  require_p1(params);
  const DiscreteOperator l0 = assemble_L(params.with_mu(0.0), grid);
  EigOptions opts;
  opts.residuals = EigOptions::Residuals::gap_band;
  const SpectrumReport rep = eig_hermitian(l0, opts);

  GnSpectrumCheck out;
  out.gap_values = gap_point_values(rep);
  out.dev_minus2omega = 1e300;
  out.dev_zero = 1e300;
  const double target = -2.0 * params.omega;
  for (const double lam : out.gap_values) {
    const double d2 = std::abs(lam - target);
    const double d0 = std::abs(lam);
    out.dev_minus2omega = std::min(out.dev_minus2omega, d2);
    out.dev_zero = std::min(out.dev_zero, d0);
    if (d2 > tol && d0 > tol) ++out.extra_count;
  }
  out.pass = out.extra_count == 0 && out.dev_minus2omega <= tol && out.dev_zero <= tol;
  return out;
}

ImprovedBeta1 improved_beta1() {
  ImprovedBeta1 out;
  out.closed_form = 0.5 * (std::sqrt(1.0 + 8.0 / (3.0 * std::sqrt(3.0))) - 1.0);
  // theta(omega, t=m) is strictly decreasing in omega; solve theta = theta_+(0)
  auto margin = [](double w) {
    ModelParams q{1.0, 1.0, w, 2.0};
    return q.mu * q_operator_norm(q) / (4.0 * (1.0 + w)) - kThetaPlus0;
  };
  out.dichotomy = bisect(margin, 0.01, 0.5, 1e-10, 200);
  return out;
}

double gn_dichotomy_boundary() {
  // E = m - omega certificate with t = m: the boundary solves
  // theta(omega) = theta_+(2 (m-omega)^2 / (m+omega)^2)
  auto margin = [](double w) {
    ModelParams q{1.0, 1.0, w, 2.0};
    const double theta = q.mu * q_operator_norm(q) / (4.0 * (1.0 + w));
    const double xi = 2.0 * (1.0 - w) * (1.0 - w) / ((1.0 + w) * (1.0 + w));
    return theta - theta_plus(xi);
  };
  return bisect(margin, 0.30, 0.40, 1e-8, 200);
}

ThresholdClearance threshold_clearance(double omega, double m) {
  ModelParams params{m, 1.0, omega, 2.0};
  params.validate();
  ThresholdClearance out;
  out.e = m - omega;
  const double tw = m + omega;  // t = m, justified by the two-eigenvalue spectrum
  out.theta = params.mu * q_operator_norm(params) / (4.0 * tw);
  const double xi = 2.0 * out.e * out.e / (tw * tw);
  out.theta_plus_at_xi = theta_plus(xi);
  out.omega_geq_half_e = omega >= 0.5 * out.e;
  out.pass = out.omega_geq_half_e && out.theta <= out.theta_plus_at_xi;
  return out;
}

}  // namespace dsl

#include "dsl/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dsl/grid.hpp"
#include "dsl/io.hpp"
#include "dsl/rootfind.hpp"
#include "dsl/spectra.hpp"

namespace dsl {

namespace {
const double kSqrt3 = std::sqrt(3.0);
const double kThetaPlus0 = 3.0 * kSqrt3 / 8.0;
}  // namespace

double q_operator_norm(const ModelParams& params) {
  params.validate();
  const double pp1 = params.p * (params.p + 1.0);
  if (params.omega > 0.5 * params.m) return pp1 * (params.m - params.omega);
  return 0.5 * pp1 * params.m * params.m / (2.0 * params.omega);
}

double theta_plus(double xi) {
  if (!(xi >= 0.0 && xi < 2.0))
    throw std::invalid_argument("theta_plus: xi must lie in [0, 2)");
  const double s = std::sqrt(9.0 * (2.0 - xi) * (2.0 - xi) + 8.0 * xi);
  const double a = 2.0 - 3.0 * xi + s;
  const double b = 6.0 - 3.0 * xi + s;
  const double c = 14.0 - 9.0 * xi + 3.0 * s;
  return 2.0 * a * b * std::sqrt(b) / (c * c);
}

EtaTheta eta_theta(double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("eta_theta: theta must be positive");
  auto lhs = [](double eta) {
    const double d = 3.0 * eta * eta - 1.0;
    return 4.0 * eta * eta * eta * (eta * eta - 1.0) / (d * d);
  };
  double hi = std::max(2.0, 3.0 * theta);
  while (lhs(hi) < theta) hi *= 2.0;
  const double eta =
      bisect([&](double e) { return lhs(e) - theta; }, 1.0 + 1e-14, hi, 1e-14, 300);
  const double h = 2.0 * eta * eta * (3.0 - eta * eta) / (3.0 * eta * eta - 1.0);
  return {eta, h};
}

double minimax_oracle(double theta) {
  if (!(theta > 0.0))
    throw std::invalid_argument("minimax_oracle: theta must be positive");
  auto g = [theta](double alpha, double eta) {
    return (1.0 - alpha) * eta * eta + (1.0 + alpha) - 4.0 * eta * theta / (1.0 + alpha);
  };
  // max over alpha: coarse grid, then golden refinement (g is concave in alpha)
  const int n_alpha = 10000;
  auto max_alpha = [&](double eta) {
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i <= n_alpha; ++i) {
      const double a = static_cast<double>(i) / n_alpha;
      const double v = g(a, eta);
      if (v > best) {
        best = v;
        best_i = i;
      }
    }
    const double lo = std::max(0.0, (best_i - 1.0) / n_alpha);
    const double hi = std::min(1.0, (best_i + 1.0) / n_alpha);
    const double a_ref = golden_max([&](double a) { return g(a, eta); }, lo, hi, 1e-13);
    return std::max(best, g(a_ref, eta));
  };
  const double eta_star = 0.5 * (theta + std::sqrt(theta * theta + 4.0));
  const double eta_circ = 2.0 * theta + std::sqrt(4.0 * theta * theta + 1.0);
  const double eta_opt = golden_min(max_alpha, eta_star, eta_circ, 1e-12);
  return max_alpha(eta_opt);
}

ConeReport cone_condition(const ModelParams& params, double t) {
  params.validate();
  if (!(t >= params.omega - 1e-12 && t <= params.m + 1e-12))
    throw std::invalid_argument("cone_condition: t must lie in [omega, m]");
  ConeReport r;
  r.q_norm = q_operator_norm(params);
  r.theta = params.mu * r.q_norm / (4.0 * (t + params.omega));
  r.theta_plus_0 = kThetaPlus0;
  r.cone_ok = r.theta <= kThetaPlus0 + 1e-15;
  r.simplified_rhs = 1.5 * kSqrt3 * params.omega;
  r.simplified_ok = r.q_norm <= r.simplified_rhs + 1e-15;
  return r;
}

double certified_E(const ModelParams& params, double t) {
  params.validate();
  if (!(t >= params.omega - 1e-12 && t <= params.m + 1e-12))
    throw std::invalid_argument("certified_E: t must lie in [omega, m]");
  const double tw = t + params.omega;
  const double theta = params.mu * q_operator_norm(params) / (4.0 * tw);
  if (theta > kThetaPlus0) return 0.0;
  auto margin = [&](double e) { return theta_plus(2.0 * e * e / (tw * tw)) - theta; };
  const double e_hi = std::min(2.0 * params.omega, tw * (1.0 - 1e-9));
  if (margin(e_hi) >= 0.0) return e_hi;
  return bisect(margin, 0.0, e_hi, 1e-10 * params.m, 300);
}

BetaThresholds beta_thresholds(double p, double mu) {
  if (!(p > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("beta_thresholds: p and mu must be positive");
  BetaThresholds out;
  out.p_circ = 0.5 * (std::sqrt(1.0 + 12.0 * kSqrt3 / mu) - 1.0);
  out.p_star = 0.5 * (std::sqrt(1.0 + 18.0 * kSqrt3 / mu) - 1.0);
  const double mpp = mu * p * (p + 1.0);
  out.omega_circ = (p > out.p_circ) ? mpp / (mpp + 3.0 * kSqrt3)
                                    : std::sqrt(mpp / (12.0 * kSqrt3));
  out.omega_star = (p > out.p_star)
                       ? (2.0 * mpp - 3.0 * kSqrt3) / (2.0 * mpp + 3.0 * kSqrt3)
                       : 0.5 * (std::sqrt(1.0 + 2.0 * mpp / (3.0 * kSqrt3)) - 1.0);
  // beta(p) is the mu = 2 specialization of omega_circ
  const double p_circ2 = 0.5 * (std::sqrt(1.0 + 6.0 * kSqrt3) - 1.0);
  const double pp2 = 2.0 * p * (p + 1.0);
  out.beta = (p >= p_circ2) ? pp2 / (pp2 + 3.0 * kSqrt3)
                            : std::sqrt(p * (p + 1.0) / (6.0 * kSqrt3));
  return out;
}

VkResult vk_quadrature(const ModelParams& params, const QuadratureSpec& quad) {
  params.validate();
  const double p = params.p;
  const double nu = params.nu();
  const double inv_p = 1.0 / p;

  // d/dnu of the profile integral: prefactor * P_nu(y^2) over the displayed
  // denominators; the (1-y^2)^{1/p-1} endpoint factor is kept explicit
  const double pref = std::pow(nu, inv_p - 1.5) / std::pow(1.0 + nu, inv_p);
  const double c2 = nu * nu * (2.0 * inv_p * nu + (1.0 - nu));
  const double c1 = nu * (1.0 + nu) * (2.0 * inv_p + 4.0);
  const double c0 = nu + 2.0 * inv_p - 1.0;

  auto integrand = [&](double y, double omy) {
    const double z = y * y;
    const double poly = (c2 * z + c1) * z + c0;
    const double one_minus_y2 = omy * (1.0 + y);
    const double den = 1.0 - nu * z;
    return pref * poly /
           (2.0 * std::pow(den, inv_p + 2.0) * std::pow(one_minus_y2, 1.0 - inv_p));
  };
  const QuadResult q = tanh_sinh_01(integrand, quad);

  // ||phi0||^2 = m^{1/p-1} 2^{1/p} (p+1)^{1/p} / p * F(nu), and
  // domega nu = -2m/(m+omega)^2
  const double m = params.m;
  const double norm_pref =
      std::pow(m, inv_p - 1.0) * std::pow(2.0, inv_p) * std::pow(p + 1.0, inv_p) / p;
  const double dnu_domega = -2.0 * m / ((m + params.omega) * (m + params.omega));

  VkResult out;
  out.f_prime_nu = q.value;
  out.converged = q.converged;
  out.value = norm_pref * q.value * dnu_domega;
  out.abs_err = std::abs(norm_pref * dnu_domega) * q.abs_err;
  if (std::abs(out.value) <= 2.0 * out.abs_err)
    out.sign = 0;
  else
    out.sign = out.value > 0.0 ? 1 : -1;
  return out;
}

double vk_sign_change_omega(double p, double m, double lo, double hi, double tol) {
  auto f = [&](double w) {
    ModelParams q{m, p, w, 2.0};
    return vk_quadrature(q).value;
  };
  return bisect(f, lo, hi, tol / m, 200);
}

StabilityVerdict region_classify(double p, double omega, const RegionOptions& opts) {
  ModelParams params{opts.m, p, omega, opts.mu};
  params.validate();

  StabilityVerdict v;
  v.p = p;
  v.omega = omega;
  v.m = opts.m;
  v.mu = opts.mu;
  v.t_used = (p == 1.0) ? opts.m : omega;

  const VkResult vk = vk_quadrature(params, opts.quad);
  v.vk_value = vk.value;
  v.vk_sign = vk.sign;
  v.vk_resolvent = std::numeric_limits<double>::quiet_NaN();
  v.vk_discrepancy = std::numeric_limits<double>::quiet_NaN();
  if (opts.resolvent_grid_n > 0) {
    const Grid grid = Grid::sized_for(params, opts.resolvent_grid_n);
    ComputeLOptions lopt;
    lopt.with_kernel_count = false;
    const auto lrep = compute_l(params.with_mu(2.0), grid, lopt);
    v.vk_resolvent = 2.0 * lrep.l_value;
    v.vk_discrepancy = std::abs(v.vk_resolvent - v.vk_value) /
                       std::max(std::abs(v.vk_value), std::abs(v.vk_resolvent));
  }

  v.q_norm = q_operator_norm(params);
  v.im_bound = 0.5 * opts.mu * v.q_norm;
  const ConeReport cone = cone_condition(params, v.t_used);
  v.theta = cone.theta;
  v.cone_ok = cone.cone_ok;
  v.beta_ok = omega >= beta_thresholds(p, 2.0).beta * opts.m;
  v.e_max = certified_E(params, v.t_used);
  v.certified = (v.vk_sign == -1) && v.cone_ok;
  return v;
}

std::string region_csv_header() {
  return "p,omega_over_m,vk_sign,vk_value,q_norm,cone_ok,beta_ok,E_max_over_m,certified";
}

std::string region_csv_row(const StabilityVerdict& v) {
  std::ostringstream os;
  os << fmt_sig12(v.p) << ',' << fmt_sig12(v.omega / v.m) << ',' << v.vk_sign << ','
     << fmt_sig12(v.vk_value) << ',' << fmt_sig12(v.q_norm) << ','
     << (v.cone_ok ? 1 : 0) << ',' << (v.beta_ok ? 1 : 0) << ','
     << fmt_sig12(v.e_max / v.m) << ',' << (v.certified ? 1 : 0);
  return os.str();
}

}  // namespace dsl

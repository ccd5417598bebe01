#pragma once

#include <string>

#include "dsl/params.hpp"
#include "dsl/quadrature.hpp"

namespace dsl {

/// Operator norm of Q, closed form with branch point at omega = m/2:
///   p(p+1)(m-omega)        for omega >  m/2,
///   p(p+1)/2 * m^2/(2 omega) for omega <= m/2.
double q_operator_norm(const ModelParams& params);

/// The threshold function theta_+ : [0,2) -> (0, 3 sqrt(3)/8], strictly
/// decreasing, with theta_+(0) = 3 sqrt(3)/8.
double theta_plus(double xi);

struct EtaTheta {
  double eta;  // unique root in (1, inf) of 4 eta^3(eta^2-1)/(3 eta^2-1)^2 = theta
  double h;    // 2 eta^2 (3 - eta^2) / (3 eta^2 - 1)
};

/// Inverts the defining equation of eta_theta by bracketed bisection.
EtaTheta eta_theta(double theta);

/// Brute-force inf over eta of max over alpha in [0,1] of
///   g_theta(alpha, eta) = (1-alpha) eta^2 + (1+alpha) - 4 eta theta/(1+alpha),
/// with an alpha grid of 1e4 points (plus local refinement; g is concave in
/// alpha) and golden-section in eta on the bracket [eta_star, eta_circ].
/// Test oracle for eta_theta / theta_plus.
double minimax_oracle(double theta);

struct ConeReport {
  double theta = 0.0;         // mu ||Q|| / (4 (t + omega))
  double theta_plus_0 = 0.0;  // 3 sqrt(3)/8
  bool cone_ok = false;       // theta <= theta_+(0)
  double q_norm = 0.0;
  bool simplified_ok = false;  // ||Q|| <= (3 sqrt(3)/2) omega
  double simplified_rhs = 0.0;
};

/// Cone condition Re z^2 >= 0 for off-axis eigenvalues, at gap datum t.
ConeReport cone_condition(const ModelParams& params, double t);

/// Largest E in [0, min(2 omega, t+omega)) with
/// mu ||Q|| / (4(t+omega)) <= theta_+(2 E^2/(t+omega)^2); 0 if even xi = 0 fails.
double certified_E(const ModelParams& params, double t);

struct BetaThresholds {
  double beta;        // mu = 2 frequency threshold (cone condition at t = omega)
  double omega_circ;  // sufficient threshold at the given mu, units of m
  double omega_star;  // necessary threshold (t = m) at the given mu, units of m
  double p_circ;
  double p_star;
};

BetaThresholds beta_thresholds(double p, double mu);

struct VkResult {
  double value = 0.0;     // d/domega ||phi0||^2
  double abs_err = 0.0;   // propagated quadrature error estimate
  int sign = 0;           // -1, 0 (within error of zero), +1
  bool converged = false;
  double f_prime_nu = 0.0;  // the nu-derivative of the profile integral
};

/// Frequency derivative of ||phi0||^2 via the closed-form integrand of the
/// nu-derivative (endpoint singularity handled by tanh-sinh quadrature).
VkResult vk_quadrature(const ModelParams& params, const QuadratureSpec& quad = {});

/// Bisection for the frequency at which vk_quadrature changes sign.
double vk_sign_change_omega(double p, double m, double lo, double hi,
                            double tol = 1e-4);

struct StabilityVerdict {
  double p = 0.0;
  double omega = 0.0;
  double m = 1.0;
  double mu = 2.0;
  int vk_sign = 0;
  double vk_value = 0.0;       // quadrature route
  double vk_resolvent = 0.0;   // 2 <phi0, L_2^{-1} phi0>; NaN unless computed
  double vk_discrepancy = 0.0; // relative; NaN unless both routes ran
  double q_norm = 0.0;
  double im_bound = 0.0;  // mu ||Q|| / 2
  double theta = 0.0;
  bool cone_ok = false;
  bool beta_ok = false;  // omega >= beta(p) m (generic mu = 2 threshold)
  double e_max = 0.0;
  double t_used = 0.0;  // omega (generic) or m (Gross-Neveu p = 1)
  bool certified = false;
};

struct RegionOptions {
  double m = 1.0;
  double mu = 2.0;
  int resolvent_grid_n = 0;  // > 0: also compute the resolvent VK route
  QuadratureSpec quad;       // tolerance for the VK quadrature
};

/// Combines the VK sign, the cone condition and the improved p = 1 datum
/// into one row of the region scan.
StabilityVerdict region_classify(double p, double omega, const RegionOptions& opts = {});

std::string region_csv_header();
std::string region_csv_row(const StabilityVerdict& v);

}  // namespace dsl

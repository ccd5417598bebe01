#pragma once

#include <vector>

#include "dsl/grid.hpp"
#include "dsl/params.hpp"
#include "dsl/spectra.hpp"

namespace dsl {

/// Generalized eigenfunctions at the essential-spectrum thresholds of L_0
/// for p = 1: (R, S)^T at m - omega and (S, R)^T at -m - omega. Bounded but
/// not square-integrable.
struct ResonanceSample {
  double x;
  double r;  // R = u v / (v^2 - u^2)
  double s;  // S = -nu/(1-nu) (v^2 - u^2/nu) / (v^2 - u^2)
};

/// Evaluates the resonance profiles via the rescaled tanh closed forms.
/// Rejects p != 1.
ResonanceSample resonance_profiles(const ModelParams& params, double x);

struct ResonanceResidual {
  double max_rel_rs;  // residual of (L_0 - (m-omega)) (R,S)^T, relative
  double max_rel_sr;  // residual of (L_0 + (m+omega)) (S,R)^T, relative
};

/// Pointwise ODE residual of both resonance equations with analytic
/// derivatives, sampled on |x| <= 20/kappa.
ResonanceResidual resonance_residual(const ModelParams& params, int n_samples = 4001);

struct GnSpectrumCheck {
  bool pass = false;
  std::vector<double> gap_values;
  double dev_minus2omega = 0.0;  // distance of the best match to -2 omega
  double dev_zero = 0.0;         // distance of the best match to 0
  int extra_count = 0;           // gap eigenvalues matching neither
};

/// For p = 1 the gap spectrum of L_0 must be exactly {-2 omega, 0}.
GnSpectrumCheck verify_L0_spectrum_p1(const ModelParams& params, const Grid& grid,
                                      double tol);

struct ImprovedBeta1 {
  double closed_form;  // (sqrt(1 + 8/(3 sqrt(3))) - 1)/2
  double dichotomy;    // root of theta(omega, t=m) = theta_+(0), p=1, mu=2
};

ImprovedBeta1 improved_beta1();

/// Frequency ratio below which the E = m - omega certificate fails
/// (p = 1, mu = 2, t = m); approximately 0.3448.
double gn_dichotomy_boundary();

struct ThresholdClearance {
  bool pass = false;
  double e = 0.0;                 // m - omega
  double theta = 0.0;             // 2 ||Q|| / (4 (m + omega))
  double theta_plus_at_xi = 0.0;  // theta_+(2 E^2/(m+omega)^2)
  bool omega_geq_half_e = false;
};

/// Checks that off-axis eigenvalues clear the inner thresholds:
/// Re z^2 > (m - omega)^2, via the E = m - omega certificate with t = m.
ThresholdClearance threshold_clearance(double omega, double m = 1.0);

}  // namespace dsl

#pragma once

#include "dsl/params.hpp"
#include "dsl/quadrature.hpp"

namespace dsl {

/// One sample of the solitary-wave profile phi0 = (v, u)^T and the derived
/// pointwise quantities. v is even, u is odd, and v^2 - u^2 > 0 everywhere.
struct SolitonSample {
  double x;
  double v;
  double u;
  double density_p;  // (v^2 - u^2)^p, evaluated by the tanh closed form
  double M;          // effective mass m - (v^2 - u^2)^p
};

struct SolitonDerivatives {
  double dv;
  double du;
};

/// Closed-form profile values at x. All quantities go through the tanh
/// closed forms; (v^2 - u^2)^p is never formed by subtraction, so the
/// evaluation stays well-scaled for large |x|.
SolitonSample soliton_eval(const ModelParams& params, double x);

/// (v^2 - u^2)^p = (p+1)(m-omega) (1-tanh^2(p kappa x)) / (1-nu tanh^2(p kappa x)).
double density_power(const ModelParams& params, double x);

/// d/dx of density_power at x (analytic).
double density_power_derivative(const ModelParams& params, double x);

/// Effective mass M(x) = m - density_power(x); tends to m at infinity.
double effective_mass(const ModelParams& params, double x);

/// M'(x), analytic.
double effective_mass_derivative(const ModelParams& params, double x);

/// Analytic x-derivatives of the closed forms for v and u.
SolitonDerivatives soliton_derivatives(const ModelParams& params, double x);

struct L2NormResult {
  double value;    // ||phi0||_{L^2}^2
  double abs_err;  // quadrature error estimate
  bool converged;
};

/// ||phi0||^2 = int (v^2 + u^2) dx by tanh-sinh quadrature in the variable
/// y = tanh(p kappa x). Throws on non-convergence only if spec demands.
L2NormResult soliton_l2_norm_sq(const ModelParams& params,
                                const QuadratureSpec& quad = {});

}  // namespace dsl

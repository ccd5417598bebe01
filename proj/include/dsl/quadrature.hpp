#pragma once

#include <functional>

namespace dsl {

/// Tanh-sinh (double-exponential) quadrature controls. Levels are doubled
/// until two successive levels agree to rel_tol, up to max_level.
struct QuadratureSpec {
  double rel_tol = 1e-12;
  int max_level = 12;
};

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;  // |last - previous| level difference
  int levels = 0;
  bool converged = false;
};

/// Integral over (0, 1) of f(y, 1-y). The integrand receives 1-y computed
/// without cancellation, so endpoint-singular factors like (1-y^2)^a can be
/// evaluated accurately near y = 1.
QuadResult tanh_sinh_01(const std::function<double(double, double)>& f,
                        const QuadratureSpec& spec = {});

/// Integral over (0, +inf) of f(x) for integrands decaying at least
/// exponentially, via the substitution x = sinh-exp of the tanh-sinh map.
QuadResult tanh_sinh_0inf(const std::function<double(double)>& f,
                          const QuadratureSpec& spec = {});

}  // namespace dsl

#pragma once

#include <functional>

namespace dsl {

/// Bracketed bisection for a function with a single sign change on [lo, hi].
/// Iterates until the bracket width is below rel_tol * max(1, |mid|).
/// Requires f(lo) and f(hi) of opposite (non-strict) signs.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol = 1e-12, int max_iter = 200);

/// Golden-section minimization of a unimodal function on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-12, int max_iter = 300);

/// Golden-section maximization of a unimodal function on [a, b]; returns argmax.
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-12, int max_iter = 300);

}  // namespace dsl

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dsl/params.hpp"

namespace dsl {

/// Uniform periodic grid on [-X, X) with N (even) points.
struct Grid {
  double half_width = 40.0;  // X
  int n_points = 1024;       // N, even, >= 64

  double spacing() const { return 2.0 * half_width / n_points; }
  double point(int j) const { return -half_width + j * spacing(); }

  void validate() const {
    if (!(half_width > 0.0))
      throw std::invalid_argument("Grid: half_width must be positive");
    if (n_points < 64 || n_points % 2 != 0)
      throw std::invalid_argument("Grid: n_points must be even and >= 64, got " +
                                  std::to_string(n_points));
  }

  /// Default sizing rule: X = max(20/kappa, 20/(p kappa)), so that both the
  /// profile (decay rate kappa) and the potentials (decay rate ~ p kappa)
  /// are negligible at the box boundary.
  static double recommended_half_width(const ModelParams& params) {
    const double kappa = params.kappa();
    return std::max(20.0 / kappa, 20.0 / (params.p * kappa));
  }

  static Grid sized_for(const ModelParams& params, int n = 1024) {
    Grid g{recommended_half_width(params), n};
    g.validate();
    return g;
  }
};

}  // namespace dsl

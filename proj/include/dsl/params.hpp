#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dsl {

/// Physical parameters of the one-dimensional Soler model with power
/// nonlinearity f(s) = s|s|^{p-1}, plus the linearization parameter mu.
/// The derived quantities kappa and nu are always recomputed from (m, omega).
struct ModelParams {
  double m = 1.0;      // mass, > 0
  double p = 1.0;      // nonlinearity power, > 0
  double omega = 0.5;  // frequency, in (0, m)
  double mu = 2.0;     // linearization parameter, >= 0 (2 = physical)

  double kappa() const { return std::sqrt((m - omega) * (m + omega)); }
  double nu() const { return (m - omega) / (m + omega); }

  bool valid() const {
    return m > 0.0 && p > 0.0 && omega > 0.0 && omega < m && mu >= 0.0 &&
           std::isfinite(m) && std::isfinite(p) && std::isfinite(omega) &&
           std::isfinite(mu);
  }

  void validate() const {
    if (!(m > 0.0) || !std::isfinite(m))
      throw std::invalid_argument("ModelParams: m must be positive, got " + std::to_string(m));
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("ModelParams: p must be positive, got " + std::to_string(p));
    if (!(omega > 0.0 && omega < m))
      throw std::invalid_argument("ModelParams: omega must lie in (0, m), got " +
                                  std::to_string(omega));
    if (!(mu >= 0.0) || !std::isfinite(mu))
      throw std::invalid_argument("ModelParams: mu must be >= 0, got " + std::to_string(mu));
  }

  ModelParams with_mu(double new_mu) const {
    ModelParams q = *this;
    q.mu = new_mu;
    return q;
  }
  ModelParams with_omega(double new_omega) const {
    ModelParams q = *this;
    q.omega = new_omega;
    return q;
  }
};

/// (kappa, nu) = (sqrt(m^2 - omega^2), (m - omega)/(m + omega)).
struct DerivedParams {
  double kappa;
  double nu;
};

inline DerivedParams derived(const ModelParams& params) {
  params.validate();
  return {params.kappa(), params.nu()};
}

}  // namespace dsl

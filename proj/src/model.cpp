#include "dsl/model.hpp"

#include <cmath>

namespace dsl {
namespace {

struct TanhTerms {
  double T;      // tanh(p kappa x)
  double sech2;  // 1 - T^2, cancellation-free
  double denom;  // 1 - nu T^2
};

TanhTerms tanh_terms(const ModelParams& params, double x) {
  const double z = params.p * params.kappa() * x;
  const double T = std::tanh(z);
  // sech^2 z = 4 e^{-2|z|} / (1 + e^{-2|z|})^2
  const double e = std::exp(-2.0 * std::abs(z));
  const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
  return {T, sech2, 1.0 - params.nu() * T * T};
}

}  // namespace

double density_power(const ModelParams& params, double x) {
  params.validate();
  const auto t = tanh_terms(params, x);
  return (params.p + 1.0) * (params.m - params.omega) * t.sech2 / t.denom;
}

double density_power_derivative(const ModelParams& params, double x) {
  params.validate();
  const auto t = tanh_terms(params, x);
  const double pk = params.p * params.kappa();
  // d/dT [(1-T^2)/(1-nu T^2)] = 2T(nu-1)/(1-nu T^2)^2, dT/dx = p kappa sech^2
  return (params.p + 1.0) * (params.m - params.omega) * 2.0 * t.T * (params.nu() - 1.0) *
         pk * t.sech2 / (t.denom * t.denom);
}

double effective_mass(const ModelParams& params, double x) {
  return params.m - density_power(params, x);
}

double effective_mass_derivative(const ModelParams& params, double x) {
  return -density_power_derivative(params, x);
}

SolitonSample soliton_eval(const ModelParams& params, double x) {
  params.validate();
  const auto t = tanh_terms(params, x);
  const double base = (params.p + 1.0) * (params.m - params.omega) * t.sech2 / t.denom;
  const double v = std::pow(base, 1.0 / (2.0 * params.p)) / std::sqrt(t.denom);
  const double u = std::sqrt(params.nu()) * t.T * v;
  return {x, v, u, base, params.m - base};
}

SolitonDerivatives soliton_derivatives(const ModelParams& params, double x) {
  params.validate();
  const auto t = tanh_terms(params, x);
  const double kappa = params.kappa();
  const double nu = params.nu();
  const auto s = soliton_eval(params, x);
  // logarithmic derivative of the closed form for v
  const double dv = s.v * kappa * t.T * ((params.p + 1.0) * nu * t.sech2 / t.denom - 1.0);
  const double du =
      std::sqrt(nu) * (params.p * kappa * t.sech2 * s.v + t.T * dv);
  return {dv, du};
}

L2NormResult soliton_l2_norm_sq(const ModelParams& params, const QuadratureSpec& quad) {
  params.validate();
  const double nu = params.nu();
  const double inv_p = 1.0 / params.p;
  // ||phi0||^2 = 2/(p kappa) [(p+1)(m-omega)]^{1/p}
  //             * int_0^1 (1 + nu y^2)(1 - y^2)^{1/p - 1}(1 - nu y^2)^{-1/p - 1} dy
  const double pref = 2.0 / (params.p * params.kappa()) *
                      std::pow((params.p + 1.0) * (params.m - params.omega), inv_p);
  auto integrand = [nu, inv_p](double y, double omy) -> double {
    const double one_minus_y2 = omy * (1.0 + y);
    const double den = 1.0 - nu * y * y;
    return (1.0 + nu * y * y) * std::pow(one_minus_y2, inv_p - 1.0) *
           std::pow(den, -inv_p - 1.0);
  };
  const QuadResult q = tanh_sinh_01(integrand, quad);
  return {pref * q.value, pref * q.abs_err, q.converged};
}

}  // namespace dsl

#include "dsl/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dsl {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

Eigen::MatrixXd fourier_derivative_matrix(const Grid& grid) {
  grid.validate();
  const int n = grid.n_points;
  const double scale = kPi / grid.half_width;  // 2*pi / period
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const int k = i - j;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      const double val = scale * 0.5 * sign / std::tan(kPi * k / n);
      d(i, j) = val;
      d(j, i) = -val;
    }
  }
  return d;
}

Eigen::MatrixXd fourier_second_derivative_matrix(const Grid& grid) {
  grid.validate();
  const int n = grid.n_points;
  const double scale = kPi / grid.half_width;
  const double s2 = scale * scale;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  const double diag = -s2 * (n * n / 12.0 + 1.0 / 6.0);
  for (int i = 0; i < n; ++i) {
    d(i, i) = diag;
    for (int j = 0; j < i; ++j) {
      const int k = i - j;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      const double s = std::sin(kPi * k / n);
      const double val = -s2 * sign / (2.0 * s * s);
      d(i, j) = val;
      d(j, i) = val;
    }
  }
  return d;
}

namespace {

void check_grid_sizing(const ModelParams& params, const Grid& grid,
                       const AssemblyOptions& opts) {
  const double want = Grid::recommended_half_width(params);
  if (grid.half_width * 2.0 < want && !opts.allow_undersized)
    throw std::invalid_argument(
        "assemble: grid half-width " + std::to_string(grid.half_width) +
        " violates the sizing rule (recommended " + std::to_string(want) +
        ") by more than 2x; pass allow_undersized to override");
}

/// Pointwise entries of Q = p(p+1)(m-omega) sech^2 / (1-nu tanh^2)^2
///                        * [[1, -sqrt(nu) tanh], [-sqrt(nu) tanh, nu tanh^2]].
struct QEntries {
  double q11, q12, q22;
};

QEntries q_entries(const ModelParams& params, double x) {
  const double z = params.p * params.kappa() * x;
  const double T = std::tanh(z);
  const double e = std::exp(-2.0 * std::abs(z));
  const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
  const double nu = params.nu();
  const double den = 1.0 - nu * T * T;
  const double pref = params.p * (params.p + 1.0) * (params.m - params.omega) * sech2 /
                      (den * den);
  const double st = std::sqrt(nu) * T;
  return {pref, -pref * st, pref * st * st};
}

}  // namespace

DiscreteOperator assemble_Q(const ModelParams& params, const Grid& grid) {
  params.validate();
  grid.validate();
  const int n = grid.n_points;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const QEntries q = q_entries(params, grid.point(j));
    a(j, j) = q.q11;
    a(j, n + j) = q.q12;
    a(n + j, j) = q.q12;
    a(n + j, n + j) = q.q22;
  }
  DiscreteOperator out;
  out.matrix = std::move(a);
  out.grid = grid;
  out.params = params;
  out.kind = OperatorKind::Q;
  out.label = "Q";
  return out;
}

DiscreteOperator assemble_L(const ModelParams& params, const Grid& grid,
                            const AssemblyOptions& opts) {
  params.validate();
  grid.validate();
  check_grid_sizing(params, grid, opts);
  const int n = grid.n_points;
  const Eigen::MatrixXd d = fourier_derivative_matrix(grid);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  // D_m = [[m, d/dx], [-d/dx, -m]] for (alpha, beta) = (-sigma_2, sigma_3)
  a.block(0, n, n, n) = d;
  a.block(n, 0, n, n) = -d;
  for (int j = 0; j < n; ++j) {
    const double x = grid.point(j);
    const double f = density_power(params, x);
    const QEntries q = q_entries(params, x);
    a(j, j) = params.m - params.omega - f - params.mu * q.q11;
    a(n + j, n + j) = -params.m - params.omega + f - params.mu * q.q22;
    a(j, n + j) -= params.mu * q.q12;
    a(n + j, j) -= params.mu * q.q12;
  }
  DiscreteOperator out;
  out.matrix = std::move(a);
  out.grid = grid;
  out.params = params;
  out.kind = OperatorKind::L;
  out.label = "L_mu=" + std::to_string(params.mu);
  return out;
}

DiscreteOperator assemble_H_square_block(const ModelParams& params, const Grid& grid,
                                         const AssemblyOptions& opts) {
  const DiscreteOperator l0 = assemble_L(params.with_mu(0.0), grid, opts);
  const DiscreteOperator lmu = assemble_L(params, grid, opts);
  DiscreteOperator out;
  out.matrix = l0.matrix * lmu.matrix;
  out.grid = grid;
  out.params = params;
  out.kind = OperatorKind::HSquareBlock;
  out.label = "L_0*L_mu=" + std::to_string(params.mu);
  out.parity_compatible = true;
  out.components = 2;
  return out;
}

std::pair<DiscreteOperator, DiscreteOperator> assemble_schrodinger_pair(
    const ModelParams& params, const Grid& grid) {
  params.validate();
  grid.validate();
  const int n = grid.n_points;
  const Eigen::MatrixXd d2 = fourier_second_derivative_matrix(grid);
  Eigen::MatrixXd minus = -d2;
  Eigen::MatrixXd plus = -d2;
  for (int j = 0; j < n; ++j) {
    const double x = grid.point(j);
    const double em = effective_mass(params, x);
    const double demdx = effective_mass_derivative(params, x);
    minus(j, j) += em * em - demdx;
    plus(j, j) += em * em + demdx;
  }
  DiscreteOperator a;
  a.matrix = std::move(minus);
  a.grid = grid;
  a.params = params;
  a.kind = OperatorKind::SchrodingerMinus;
  a.label = "-dxx+M^2-M'";
  a.components = 1;
  DiscreteOperator b;
  b.matrix = std::move(plus);
  b.grid = grid;
  b.params = params;
  b.kind = OperatorKind::SchrodingerPlus;
  b.label = "-dxx+M^2+M'";
  b.components = 1;
  return {std::move(a), std::move(b)};
}

Eigen::MatrixXd parity_basis(const Grid& grid, ParitySelector sector, int components) {
  grid.validate();
  if (sector == ParitySelector::full)
    throw std::invalid_argument("parity_basis: full is not a sector");
  const int n = grid.n_points;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // scalar bases: even functions satisfy f(x_{(N-j) mod N}) = f(x_j)
  auto scalar_cols = [&](bool even) {
    std::vector<Eigen::VectorXd> cols;
    if (even) {
      Eigen::VectorXd c0 = Eigen::VectorXd::Zero(n);
      c0(0) = 1.0;  // x = -X, its own mirror under periodicity
      cols.push_back(c0);
      Eigen::VectorXd ch = Eigen::VectorXd::Zero(n);
      ch(n / 2) = 1.0;  // x = 0
      cols.push_back(ch);
    }
    for (int j = 1; j < n / 2; ++j) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
      c(j) = inv_sqrt2;
      c(n - j) = even ? inv_sqrt2 : -inv_sqrt2;
      cols.push_back(c);
    }
    return cols;
  };

  std::vector<Eigen::VectorXd> first, second;
  if (components == 1) {
    first = scalar_cols(sector == ParitySelector::even);
  } else if (components == 2) {
    // even spinor: first component even, second odd
    first = scalar_cols(sector == ParitySelector::even);
    second = scalar_cols(sector == ParitySelector::odd);
  } else {
    throw std::invalid_argument("parity_basis: components must be 1 or 2");
  }

  const int dim = components * n;
  const int cols = static_cast<int>(first.size() + second.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, cols);
  int c = 0;
  for (const auto& v : first) b.col(c++).head(n) = v;
  for (const auto& v : second) b.col(c++).tail(n) = v;
  return b;
}

DiscreteOperator restrict_parity(const DiscreteOperator& op, ParitySelector sector) {
  if (!op.parity_compatible)
    throw std::invalid_argument("restrict_parity: operator not parity compatible");
  if (op.sector != ParitySelector::full)
    throw std::invalid_argument("restrict_parity: operator already restricted");
  const Eigen::MatrixXd b = parity_basis(op.grid, sector, op.components);

  // commutation test against the sector projector
  const Eigen::MatrixXd ab = op.matrix * b;
  const Eigen::MatrixXd comm = ab - b * (b.transpose() * ab);
  const double scale = op.matrix.cwiseAbs().maxCoeff();
  if (comm.cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1.0))
    throw std::invalid_argument("restrict_parity: operator does not commute with the parity projector");

  DiscreteOperator out;
  out.matrix = b.transpose() * ab;
  out.grid = op.grid;
  out.params = op.params;
  out.kind = op.kind;
  out.label = op.label + (sector == ParitySelector::even ? " [even]" : " [odd]");
  out.parity_compatible = false;
  out.components = op.components;
  out.sector = sector;
  out.sector_basis = b;
  return out;
}

Eigen::VectorXd sample_phi0(const ModelParams& params, const Grid& grid) {
  const int n = grid.n_points;
  Eigen::VectorXd out(2 * n);
  for (int j = 0; j < n; ++j) {
    const SolitonSample s = soliton_eval(params, grid.point(j));
    out(j) = s.v;
    out(n + j) = s.u;
  }
  return out;
}

Eigen::VectorXd sample_sigma1_phi0(const ModelParams& params, const Grid& grid) {
  const int n = grid.n_points;
  Eigen::VectorXd out(2 * n);
  for (int j = 0; j < n; ++j) {
    const SolitonSample s = soliton_eval(params, grid.point(j));
    out(j) = s.u;
    out(n + j) = s.v;
  }
  return out;
}

Eigen::VectorXd sample_dx_phi0(const ModelParams& params, const Grid& grid) {
  const int n = grid.n_points;
  Eigen::VectorXd out(2 * n);
  for (int j = 0; j < n; ++j) {
    const SolitonDerivatives d = soliton_derivatives(params, grid.point(j));
    out(j) = d.dv;
    out(n + j) = d.du;
  }
  return out;
}

double symmetry_defect(const Eigen::MatrixXd& a) {
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace dsl

#include "dsl/spectra.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "lapack_detail.hpp"

namespace dsl {

const char* to_string(EvClass c) {
  switch (c) {
    case EvClass::gap_point: return "gap_point";
    case EvClass::essential_cluster: return "essential_cluster";
    case EvClass::edge_ambiguous: return "edge_ambiguous";
    default: return "unclassified";
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Essential-spectrum gap of the operator the report describes.
void gap_interval(const DiscreteOperator& op, double& lo, double& hi) {
  const double m = op.params.m;
  const double w = op.params.omega;
  switch (op.kind) {
    case OperatorKind::L:
      lo = -m - w;
      hi = m - w;
      break;
    case OperatorKind::HSquareBlock:  // gap of H in the z variable
      lo = -(m - w);
      hi = m - w;
      break;
    case OperatorKind::SchrodingerMinus:
    case OperatorKind::SchrodingerPlus:
      lo = -1e300;
      hi = m * m;
      break;
    default:  // multiplication operators carry no meaningful gap
      lo = 0.0;
      hi = 0.0;
      break;
  }
}

double default_delta(const ModelParams& params) {
  return 0.02 * (params.m - params.omega);
}

/// Mass fraction of the (component-major) vector inside |x| <= X/2.
template <typename Vec>
double localization_of(const Vec& v, const Grid& grid, int components) {
  const int n = grid.n_points;
  double inside = 0.0, total = 0.0;
  for (int c = 0; c < components; ++c) {
    for (int j = 0; j < n; ++j) {
      const double a = std::norm(std::complex<double>(v[c * n + j]));
      total += a;
      if (std::abs(grid.point(j)) <= 0.5 * grid.half_width) inside += a;
    }
  }
  return total > 0.0 ? inside / total : 0.0;
}

bool in_residual_band(double re, double im, const DiscreteOperator& op, double lo,
                      double hi) {
  if (op.kind == OperatorKind::HSquareBlock) {
    // z^2 plane: keep everything within a few m^2 of the origin
    const double cap = 5.0 * op.params.m * op.params.m;
    return std::hypot(re, im) <= cap;
  }
  const double pad = 0.05 * op.params.m;
  return re >= lo - pad && re <= hi + pad;
}

}  // namespace

void classify_gap(SpectrumReport& report, double delta) {
  const double m = report.params.m;
  const double w = report.params.omega;
  if (delta <= 0.0 || delta > 0.5 * (m - w))
    throw std::invalid_argument("classify_gap: delta must lie in (0, (m-omega)/2]");
  if (report.gap_lo == 0.0 && report.gap_hi == 0.0) return;
  for (auto& e : report.entries) {
    if (std::abs(e.im) > 1e-8 * m) {
      // off the real axis: genuinely discrete if localized
      e.cls = e.localization >= 0.99 ? EvClass::gap_point : EvClass::essential_cluster;
      continue;
    }
    const bool near_lo = std::abs(e.re - report.gap_lo) <= delta;
    const bool near_hi = std::abs(e.re - report.gap_hi) <= delta;
    if (near_lo || near_hi) {
      e.cls = EvClass::edge_ambiguous;
    } else if (e.re > report.gap_lo + delta && e.re < report.gap_hi - delta) {
      e.cls = e.localization >= 0.99 ? EvClass::gap_point : EvClass::essential_cluster;
    } else {
      e.cls = EvClass::essential_cluster;
    }
  }
}

std::vector<double> gap_point_values(const SpectrumReport& report) {
  std::vector<double> out;
  for (const auto& e : report.entries)
    if (e.cls == EvClass::gap_point) out.push_back(e.re);
  std::sort(out.begin(), out.end());
  return out;
}

SpectrumReport eig_hermitian(const DiscreteOperator& op, const EigOptions& opts) {
  const double sym_defect = symmetry_defect(op.matrix);
  const double scale = std::max(op.matrix.cwiseAbs().maxCoeff(), 1.0);
  if (sym_defect > 1e-10 * scale)
    throw std::invalid_argument("eig_hermitian: matrix is not symmetric (defect " +
                                std::to_string(sym_defect) + ")");
  const auto t0 = Clock::now();
  detail::SymEig eig = detail::sym_eig(op.matrix, true);

  SpectrumReport rep;
  rep.params = op.params;
  rep.grid = op.grid;
  rep.kind = op.kind;
  rep.label = op.label;
  rep.solver = "lapack_dsyevd";
  gap_interval(op, rep.gap_lo, rep.gap_hi);

  const int n = static_cast<int>(eig.values.size());
  rep.entries.resize(n);

  const bool restricted = op.sector != ParitySelector::full;
  for (int i = 0; i < n; ++i) {
    EigenEntry& e = rep.entries[i];
    e.re = eig.values(i);
    e.im = 0.0;
    if (restricted) {
      const Eigen::VectorXd lifted = op.sector_basis * eig.vectors.col(i);
      e.localization = localization_of(lifted, op.grid, op.components);
    } else {
      e.localization = localization_of(eig.vectors.col(i), op.grid, op.components);
    }
  }

  switch (opts.residuals) {
    case EigOptions::Residuals::all: {
      const Eigen::MatrixXd r =
          op.matrix * eig.vectors - eig.vectors * eig.values.asDiagonal();
      for (int i = 0; i < n; ++i) rep.entries[i].residual = r.col(i).norm();
      break;
    }
    case EigOptions::Residuals::gap_band: {
      for (int i = 0; i < n; ++i) {
        EigenEntry& e = rep.entries[i];
        if (in_residual_band(e.re, 0.0, op, rep.gap_lo, rep.gap_hi))
          e.residual = (op.matrix * eig.vectors.col(i) - e.re * eig.vectors.col(i)).norm();
      }
      break;
    }
    case EigOptions::Residuals::none:
      break;
  }

  const double delta = opts.classify_delta > 0.0 ? opts.classify_delta
                                                 : default_delta(op.params);
  classify_gap(rep, delta);

  if (opts.want_vectors) {
    if (restricted) {
      rep.vectors = (op.sector_basis * eig.vectors).cast<std::complex<double>>();
    } else {
      rep.vectors = eig.vectors.cast<std::complex<double>>();
    }
    rep.has_vectors = true;
  }
  rep.elapsed_ms = elapsed_ms_since(t0);
  return rep;
}

HSpectrum eig_general(const DiscreteOperator& op, const EigOptions& opts) {
  if (op.kind != OperatorKind::HSquareBlock)
    throw std::invalid_argument("eig_general expects an H-square block");
  const auto t0 = Clock::now();
  detail::GenEig eig;
  std::string solver = "lapack_dgeev";
  const double scale = std::max(op.matrix.cwiseAbs().maxCoeff(), 1.0);
  if (symmetry_defect(op.matrix) <= 1e-12 * scale) {
    // mu = 0 gives the symmetric block L_0^2; keep its spectrum exactly real
    detail::SymEig sym = detail::sym_eig(op.matrix, true);
    eig.values = sym.values.cast<std::complex<double>>();
    eig.vectors = sym.vectors.cast<std::complex<double>>();
    solver = "lapack_dsyevd";
  } else {
    eig = detail::gen_eig(op.matrix, true);
  }
  const int n = static_cast<int>(eig.values.size());

  HSpectrum out;
  for (SpectrumReport* rep : {&out.zsq, &out.z}) {
    rep->params = op.params;
    rep->grid = op.grid;
    rep->kind = op.kind;
    rep->solver = solver;
    gap_interval(op, rep->gap_lo, rep->gap_hi);
  }
  out.zsq.label = op.label;
  out.z.label = op.label + " [z]";

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto za = eig.values(a);
    const auto zb = eig.values(b);
    return za.real() != zb.real() ? za.real() < zb.real() : za.imag() < zb.imag();
  });

  out.zsq.entries.resize(n);
  Eigen::MatrixXcd sorted_vectors(eig.vectors.rows(), n);
  for (int k = 0; k < n; ++k) {
    const int i = order[k];
    EigenEntry& e = out.zsq.entries[k];
    e.re = eig.values(i).real();
    e.im = eig.values(i).imag();
    e.localization = localization_of(eig.vectors.col(i), op.grid, op.components);
    sorted_vectors.col(k) = eig.vectors.col(i);
  }

  const bool all_res = opts.residuals == EigOptions::Residuals::all;
  if (opts.residuals != EigOptions::Residuals::none) {
    for (int k = 0; k < n; ++k) {
      EigenEntry& e = out.zsq.entries[k];
      if (!all_res && !in_residual_band(e.re, e.im, op, out.zsq.gap_lo, out.zsq.gap_hi))
        continue;
      const std::complex<double> lambda(e.re, e.im);
      const Eigen::VectorXcd v = sorted_vectors.col(k);
      e.residual = (op.matrix * v - lambda * v).norm() / v.norm();
    }
  }

  // derived z-set: principal square root folded into the closed upper-right
  // quadrant, then completed across both axes (per parent eigenvalue)
  for (int k = 0; k < n; ++k) {
    const EigenEntry& parent = out.zsq.entries[k];
    const std::complex<double> zr0 =
        std::sqrt(std::complex<double>(parent.re, parent.im));
    const std::complex<double> zr(std::abs(zr0.real()), std::abs(zr0.imag()));
    const double tol = 1e-12 * std::max(1.0, std::abs(zr));
    std::vector<std::complex<double>> copies{zr, -zr, std::conj(zr), -std::conj(zr)};
    std::vector<std::complex<double>> kept;
    for (const auto& c : copies) {
      bool dup = false;
      for (const auto& k2 : kept)
        if (std::abs(c - k2) <= tol) dup = true;
      if (!dup) kept.push_back(c);
    }
    for (const auto& c : kept) {
      EigenEntry e = parent;
      e.re = c.real();
      e.im = c.imag();
      out.z.entries.push_back(e);
    }
  }
  std::sort(out.z.entries.begin(), out.z.entries.end(), [](const auto& a, const auto& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  });

  const double delta = opts.classify_delta > 0.0 ? opts.classify_delta
                                                 : default_delta(op.params);
  classify_gap(out.z, delta);

  if (opts.want_vectors) {
    out.zsq.vectors = std::move(sorted_vectors);
    out.zsq.has_vectors = true;
  }
  out.zsq.elapsed_ms = out.z.elapsed_ms = elapsed_ms_since(t0);
  return out;
}

double estimate_t(const SpectrumReport& l0_report) {
  const double m = l0_report.params.m;
  const double tol = 1e-8 * m;
  double best = -1.0;
  for (const auto& e : l0_report.entries) {
    if (e.cls != EvClass::gap_point) continue;
    if (e.re > tol && (best < 0.0 || e.re < best)) best = e.re;
  }
  return best < 0.0 ? m : best + l0_report.params.omega;
}

ZeroMultiplicityReport compute_l(const ModelParams& params, const Grid& grid,
                                 const ComputeLOptions& opts) {
  params.validate();
  const DiscreteOperator lmu = assemble_L(params, grid);
  const DiscreteOperator lmu_even = restrict_parity(lmu, ParitySelector::even);
  const Eigen::VectorXd phi_full = sample_phi0(params, grid);
  const Eigen::VectorXd phi_s = lmu_even.sector_basis.transpose() * phi_full;

  ZeroMultiplicityReport rep;
  const detail::SolveResult sol = detail::solve_linear(lmu_even.matrix, phi_s);
  const double anorm = lmu_even.matrix.cwiseAbs().colwise().sum().maxCoeff();
  rep.smin_estimate = sol.rcond * anorm;
  rep.sector_invertible = sol.rcond > 1e-8;

  const double h = grid.spacing();
  rep.l_value = h * phi_s.dot(sol.x);

  if (opts.with_kernel_count) {
    const DiscreteOperator hsq = assemble_H_square_block(params, grid);
    rep.kernel_dim = small_singular_count(hsq.matrix, 1e-8);
  }

  const double norm_sq = h * phi_s.squaredNorm();
  const bool sign_nonzero = std::abs(rep.l_value) > 1e-10 * norm_sq / params.m;
  const bool kernel_ok = rep.kernel_dim < 0 || rep.kernel_dim == 2;
  rep.verdict = (rep.sector_invertible && sign_nonzero && kernel_ok)
                    ? "multiplicity-2"
                    : "suspicious";
  return rep;
}

FirstEigenvalueBound first_eigenvalue_bound_check(const ModelParams& params,
                                                  const Grid& grid) {
  if (!(params.mu > 0.0))
    throw std::invalid_argument("first_eigenvalue_bound_check requires mu > 0");
  const DiscreteOperator lmu = assemble_L(params, grid);
  EigOptions opts;
  opts.residuals = EigOptions::Residuals::gap_band;
  const SpectrumReport rep = eig_hermitian(lmu, opts);

  // ||Q|| closed form, kept local to avoid a dependency cycle with stability
  const double qn = (params.omega > 0.5 * params.m)
                        ? params.p * (params.p + 1.0) * (params.m - params.omega)
                        : params.p * (params.p + 1.0) * 0.5 * params.m * params.m /
                              (2.0 * params.omega);

  FirstEigenvalueBound out;
  out.lower_bound = -params.mu * qn;
  const double exclusion = 1e-7 * params.m;
  for (const double lam : gap_point_values(rep)) {
    if (lam > -2.0 * params.omega + exclusion) {
      out.found = true;
      out.lambda1 = lam;
      break;
    }
  }
  if (!out.found) return out;
  out.margin_lower = out.lambda1 - out.lower_bound;
  out.margin_upper = -out.lambda1;
  out.pass = out.margin_lower >= -1e-9 * params.m && out.lambda1 < 0.0;
  return out;
}

int small_singular_count(const Eigen::MatrixXd& a, double rel_thresh) {
  const Eigen::VectorXd s = detail::singular_values(a);
  if (s.size() == 0) return 0;
  const double cut = rel_thresh * s(0);
  int count = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) < cut) ++count;
  return count;
}

double identity_re_z2(const SpectrumReport& l0, const Eigen::MatrixXd& lmu_matrix,
                      const Eigen::VectorXcd& phi1) {
  if (!l0.has_vectors)
    throw std::invalid_argument("identity_re_z2 needs L_0 eigenvectors");
  const double m = l0.params.m;
  const double w = l0.params.omega;
  const double eps = 1e-6 * m;
  const int n = static_cast<int>(l0.entries.size());

  Eigen::VectorXcd proj_plus = Eigen::VectorXcd::Zero(phi1.size());
  Eigen::VectorXcd proj_minus = Eigen::VectorXcd::Zero(phi1.size());
  double denom = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lam = l0.entries[i].re;
    const bool plus = lam > eps;
    const bool minus = lam < -2.0 * w - eps;
    if (!plus && !minus) continue;
    const Eigen::VectorXcd v = l0.vectors.col(i);
    const std::complex<double> c = v.dot(phi1);  // conjugate-linear in v
    denom += std::norm(c) / std::abs(lam);
    if (plus)
      proj_plus += c * v;
    else
      proj_minus += c * v;
  }
  const std::complex<double> num =
      proj_plus.dot(lmu_matrix * proj_plus) - proj_minus.dot(lmu_matrix * proj_minus);
  return num.real() / denom;
}

}  // namespace dsl

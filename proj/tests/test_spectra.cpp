#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "dsl/spectra.hpp"
#include "dsl/stability.hpp"

using namespace dsl;

namespace {

// Brute-force cyclic Jacobi eigenvalue iteration in 80-bit precision.
// Independent of the LAPACK path it cross-checks.
std::vector<double> jacobi_eigenvalues_ld(const Eigen::MatrixXd& in) {
  const int n = static_cast<int>(in.rows());
  std::vector<long double> a(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = static_cast<long double>(in(i, j));

  auto at = [&](int i, int j) -> long double& { return a[i * n + j]; };
  long double scale = 0.0L;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(at(i, i)));

  for (int sweep = 0; sweep < 60; ++sweep) {
    long double off = 0.0L;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (std::sqrt(off) < 1e-24L * std::max(scale, 1.0L)) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const long double apq = at(p, q);
        if (std::abs(apq) < 1e-30L) continue;
        const long double tau = (at(q, q) - at(p, p)) / (2.0L * apq);
        const long double t = (tau >= 0.0L)
                                  ? 1.0L / (tau + std::sqrt(1.0L + tau * tau))
                                  : -1.0L / (-tau + std::sqrt(1.0L + tau * tau));
        const long double c = 1.0L / std::sqrt(1.0L + t * t);
        const long double s = t * c;
        for (int k = 0; k < n; ++k) {
          const long double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const long double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> evs(n);
  for (int i = 0; i < n; ++i) evs[i] = static_cast<double>(at(i, i));
  std::sort(evs.begin(), evs.end());
  return evs;
}

bool contains_value(const std::vector<double>& vals, double target, double tol) {
  for (double v : vals)
    if (std::abs(v - target) <= tol) return true;
  return false;
}

DiscreteOperator free_dirac(const ModelParams& params, const Grid& grid) {
  // L with the soliton terms removed: pure essential spectrum on the line
  DiscreteOperator op = assemble_L(params.with_mu(0.0), grid);
  const int n = grid.n_points;
  const Eigen::MatrixXd d = fourier_derivative_matrix(grid);
  op.matrix.setZero();
  op.matrix.block(0, n, n, n) = d;
  op.matrix.block(n, 0, n, n) = -d;
  for (int j = 0; j < n; ++j) {
    op.matrix(j, j) = params.m - params.omega;
    op.matrix(n + j, n + j) = -params.m - params.omega;
  }
  op.label = "free Dirac";
  return op;
}

}  // namespace

TEST_CASE("gap spectrum of L0 in the two-eigenvalue case") {
  const ModelParams params{1.0, 1.0, 0.5, 0.0};
  const Grid grid = Grid::sized_for(params, 256);
  const SpectrumReport rep = eig_hermitian(assemble_L(params, grid));
  const auto gap = gap_point_values(rep);
  REQUIRE(gap.size() == 2);
  CHECK(std::abs(gap[0] + 1.0) < 1e-6);
  CHECK(std::abs(gap[1]) < 1e-6);
  for (const auto& e : rep.entries)
    if (e.cls == EvClass::gap_point) {
      CHECK(e.residual >= 0.0);
      CHECK(e.residual < 1e-7 * std::max(1.0, 1.0));
      CHECK(e.localization >= 0.99);
    }
}

TEST_CASE("free case has no gap points") {
  const ModelParams params{1.0, 1.0, 0.5, 0.0};
  const Grid grid = Grid::sized_for(params, 256);
  const SpectrumReport rep = eig_hermitian(free_dirac(params, grid));
  CHECK(gap_point_values(rep).empty());
  // essential clusters hug the gap edges from outside
  for (const auto& e : rep.entries) {
    CHECK((e.re <= rep.gap_lo + 1e-9 || e.re >= rep.gap_hi - 1e-9));
  }
}

TEST_CASE("L2 at p=2, omega=0.9 has exactly one interior eigenvalue") {
  const ModelParams params{1.0, 2.0, 0.9, 2.0};
  const Grid grid = Grid::sized_for(params, 512);
  const SpectrumReport rep = eig_hermitian(assemble_L(params, grid));
  const auto gap = gap_point_values(rep);
  CHECK(contains_value(gap, -1.8, 1e-6));
  CHECK(contains_value(gap, 0.0, 1e-6));
  int interior = 0;
  for (double v : gap)
    if (v > -1.8 + 1e-6 && v < -1e-6) ++interior;
  CHECK(interior == 1);
}

TEST_CASE("L0 gap spectrum is symmetric about -omega") {
  const ModelParams params{1.0, 0.4, 0.75, 0.0};
  const Grid grid = Grid::sized_for(params, 384);
  const SpectrumReport rep = eig_hermitian(assemble_L(params, grid));
  const auto gap = gap_point_values(rep);
  CHECK(gap.size() >= 2);
  for (double v : gap) {
    const double mirror = -2.0 * params.omega - v;
    CHECK(contains_value(gap, mirror, 1e-8));
  }
}

TEST_CASE("high-precision Jacobi oracle agrees with the LAPACK path") {
  const ModelParams params{1.0, 1.0, 0.6, 2.0};
  const Grid grid = Grid::sized_for(params, 128);
  const DiscreteOperator l2 = assemble_L(params, grid);
  const SpectrumReport rep = eig_hermitian(l2);
  const std::vector<double> oracle = jacobi_eigenvalues_ld(l2.matrix);
  REQUIRE(static_cast<int>(oracle.size()) == static_cast<int>(rep.entries.size()));
  double worst = 0.0;
  for (size_t i = 0; i < oracle.size(); ++i)
    worst = std::max(worst, std::abs(oracle[i] - rep.entries[i].re));
  CHECK(worst < 1e-9 * l2.matrix.cwiseAbs().maxCoeff());
}

TEST_CASE("gap points stable under refinement, essential cluster moves") {
  const ModelParams params{1.0, 1.0, 0.5, 2.0};
  const Grid coarse = Grid::sized_for(params, 256);
  const Grid fine{coarse.half_width, 512};
  const Grid wide{1.25 * coarse.half_width, 256};

  EigOptions opts;
  opts.residuals = EigOptions::Residuals::gap_band;
  const SpectrumReport rep0 = eig_hermitian(assemble_L(params, coarse), opts);
  const SpectrumReport rep1 = eig_hermitian(assemble_L(params, fine), opts);
  const SpectrumReport rep2 = eig_hermitian(assemble_L(params, wide), opts);
  const auto g0 = gap_point_values(rep0);
  const auto g1 = gap_point_values(rep1);
  const auto g2 = gap_point_values(rep2);
  REQUIRE(g0.size() == g1.size());
  REQUIRE(g0.size() == g2.size());
  for (size_t i = 0; i < g0.size(); ++i) {
    CHECK(std::abs(g0[i] - g1[i]) < 1e-8);
    CHECK(std::abs(g0[i] - g2[i]) < 1e-8);
  }

  // the essential cluster is a box artifact and moves with the box: the
  // lowest discretized continuum value above the gap shifts when X grows
  auto lowest_essential = [](const SpectrumReport& rep) {
    for (const auto& e : rep.entries)
      if (e.cls == EvClass::essential_cluster && e.re >= rep.gap_hi - 1e-9)
        return e.re;
    return 1e300;
  };
  CHECK(std::abs(lowest_essential(rep0) - lowest_essential(rep2)) > 1e-8);
}

TEST_CASE("synthetic delocalized vector classifies as essential") {
  // classification is by value location and localization; a plane-wave-like
  // entry near the upper gap edge must not be promoted to gap_point
  SpectrumReport rep;
  rep.params = {1.0, 1.0, 0.5, 0.0};
  rep.grid = Grid{20.0, 128};
  rep.kind = OperatorKind::L;
  rep.gap_lo = -1.5;
  rep.gap_hi = 0.5;
  EigenEntry plane;
  plane.re = 0.45;
  plane.localization = 0.48;
  EigenEntry localized = plane;
  localized.re = -0.6;
  localized.localization = 0.999;
  rep.entries = {plane, localized};
  classify_gap(rep, 0.05 * 0.5);
  CHECK(rep.entries[0].cls == EvClass::essential_cluster);
  CHECK(rep.entries[1].cls == EvClass::gap_point);
}

TEST_CASE("H-square spectrum at mu=2 contains the known set") {
  const ModelParams params{1.0, 1.0, 0.8, 2.0};
  const Grid grid = Grid::sized_for(params, 256);
  const HSpectrum hs = eig_general(assemble_H_square_block(params, grid));

  std::vector<double> zre;
  for (const auto& e : hs.z.entries)
    if (std::abs(e.im) < 1e-5) zre.push_back(e.re);
  CHECK(contains_value(zre, 2.0 * params.omega, 1e-5));
  CHECK(contains_value(zre, -2.0 * params.omega, 1e-5));
  int zero_count = 0;
  for (const auto& e : hs.zsq.entries)
    if (std::abs(std::complex<double>(e.re, e.im)) < 1e-8) ++zero_count;
  CHECK(zero_count == 2);  // double eigenvalue at the origin

  // four-fold symmetry of the reported z-set
  for (const auto& e : hs.z.entries) {
    bool has_neg = false, has_conj = false;
    for (const auto& f : hs.z.entries) {
      if (std::abs(f.re + e.re) < 1e-7 && std::abs(f.im + e.im) < 1e-7) has_neg = true;
      if (std::abs(f.re - e.re) < 1e-7 && std::abs(f.im + e.im) < 1e-7) has_conj = true;
    }
    CHECK(has_neg);
    CHECK(has_conj);
  }

  // Im z bound from the Q norm
  const double bound = 0.5 * params.mu * q_operator_norm(params) + 1e-6 * params.m;
  for (const auto& e : hs.z.entries) CHECK(std::abs(e.im) <= bound);
}

TEST_CASE("H-square spectrum at mu=0 is real") {
  const ModelParams params{1.0, 1.0, 0.8, 0.0};
  const Grid grid = Grid::sized_for(params, 128);
  const HSpectrum hs = eig_general(assemble_H_square_block(params, grid));
  CHECK(hs.zsq.solver == "lapack_dsyevd");  // symmetric block detected
  for (const auto& e : hs.zsq.entries) CHECK(e.im == 0.0);
  for (const auto& e : hs.z.entries) {
    if (std::abs(std::complex<double>(e.re, e.im)) <= 1e-6) continue;  // kernel
    CHECK(std::abs(e.im) < 1e-8 * (1.0 + std::abs(e.re)));
  }
}

TEST_CASE("kernel count of the H-square block") {
  const ModelParams params{1.0, 1.0, 0.6, 2.0};
  const Grid grid = Grid::sized_for(params, 256);
  const DiscreteOperator hsq = assemble_H_square_block(params, grid);
  CHECK(small_singular_count(hsq.matrix) == 2);
}

TEST_CASE("compute_l signs and the VK connection") {
  {
    const ModelParams params{1.0, 1.0, 0.7, 2.0};
    const Grid grid = Grid::sized_for(params, 384);
    const ZeroMultiplicityReport rep = compute_l(params, grid);
    CHECK(rep.sector_invertible);
    CHECK(rep.l_value < 0.0);
    CHECK(rep.kernel_dim == 2);
    CHECK(rep.verdict == "multiplicity-2");
  }
  {
    const ModelParams params{1.0, 3.0, 0.95, 2.0};
    const Grid grid = Grid::sized_for(params, 512);
    ComputeLOptions opts;
    opts.with_kernel_count = false;
    const ZeroMultiplicityReport rep = compute_l(params, grid, opts);
    CHECK(rep.sector_invertible);
    CHECK(rep.l_value > 0.0);
  }
  {
    // mu -> 0+: phi0 spans the even kernel of L_0, the sector turns singular
    const ModelParams params{1.0, 1.0, 0.7, 1e-8};
    const Grid grid = Grid::sized_for(params, 256);
    const ZeroMultiplicityReport rep = compute_l(params, grid, {false});
    CHECK_FALSE(rep.sector_invertible);
    CHECK(rep.verdict == "suspicious");
  }
}

TEST_CASE("first eigenvalue bound") {
  {
    const ModelParams params{1.0, 1.0, 0.9, 2.0};
    const Grid grid = Grid::sized_for(params, 256);
    const FirstEigenvalueBound b = first_eigenvalue_bound_check(params, grid);
    CHECK(b.found);
    CHECK(b.pass);
    CHECK(b.lambda1 >= -2.0 * q_operator_norm(params));
    CHECK(b.lambda1 < 0.0);
  }
  {
    // non-relativistic limit: lambda_1 ~ -p(p+2) kappa^2/(2m)
    const double kappa = 0.1;
    const ModelParams params{1.0, 1.0, std::sqrt(1.0 - kappa * kappa), 2.0};
    const Grid grid = Grid::sized_for(params, 512);
    const FirstEigenvalueBound b = first_eigenvalue_bound_check(params, grid);
    CHECK(b.found);
    CHECK(b.pass);
    const double predicted = -3.0 * kappa * kappa / 2.0;
    CHECK(std::abs(b.lambda1 - predicted) < 0.2 * std::abs(predicted));
  }
  {
    // Feynman-Hellmann monotonicity: lambda_1 non-increasing in mu
    const ModelParams base{1.0, 1.0, 0.8, 2.0};
    const Grid grid = Grid::sized_for(base, 256);
    double prev = 0.0;
    bool first = true;
    for (double mu : {0.5, 1.0, 1.5, 2.0}) {
      const FirstEigenvalueBound b = first_eigenvalue_bound_check(base.with_mu(mu), grid);
      CHECK(b.found);
      if (!first) CHECK(b.lambda1 <= prev + 1e-10);
      prev = b.lambda1;
      first = false;
    }
  }
}

TEST_CASE("estimate_t") {
  // p = 1: no positive gap eigenvalues, so t = m
  const ModelParams params{1.0, 1.0, 0.5, 0.0};
  const Grid grid = Grid::sized_for(params, 256);
  const SpectrumReport rep = eig_hermitian(assemble_L(params, grid));
  CHECK(estimate_t(rep) == doctest::Approx(1.0));

  // small p at mu=0 has positive gap eigenvalues, so t < m
  const ModelParams small_p{1.0, 0.2, 0.9, 0.0};
  const Grid grid2 = Grid::sized_for(small_p, 512);
  const SpectrumReport rep2 = eig_hermitian(assemble_L(small_p, grid2));
  const double t = estimate_t(rep2);
  CHECK(t > small_p.omega);
  CHECK(t < small_p.m);
}

TEST_CASE("identity evaluator on a pure L0 eigenvector") {
  const ModelParams params{1.0, 1.0, 0.6, 2.0};
  const Grid grid = Grid::sized_for(params, 128);
  const DiscreteOperator l0 = assemble_L(params.with_mu(0.0), grid);
  const DiscreteOperator l2 = assemble_L(params, grid);
  EigOptions opts;
  opts.want_vectors = true;
  opts.residuals = EigOptions::Residuals::none;
  const SpectrumReport rep = eig_hermitian(l0, opts);

  // pick an eigenvector well inside the positive essential cluster
  int idx = -1;
  for (int i = 0; i < static_cast<int>(rep.entries.size()); ++i)
    if (rep.entries[i].re > 1.0) {
      idx = i;
      break;
    }
  REQUIRE(idx >= 0);
  const double lam = rep.entries[idx].re;
  const Eigen::VectorXcd phi = rep.vectors.col(idx);
  // P+ phi = phi, P- phi = 0: the ratio reduces to lambda <phi, L_mu phi>
  const double expected =
      lam * (phi.dot(l2.matrix * phi)).real() / phi.squaredNorm();
  const double got = identity_re_z2(rep, l2.matrix, phi);
  CHECK(std::abs(got - expected) < 1e-8 * std::max(1.0, std::abs(expected)));
}

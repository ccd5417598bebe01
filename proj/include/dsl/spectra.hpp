#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "dsl/operators.hpp"

namespace dsl {

enum class EvClass { unclassified, gap_point, essential_cluster, edge_ambiguous };

const char* to_string(EvClass c);

struct EigenEntry {
  double re = 0.0;
  double im = 0.0;
  double residual = -1.0;  // ||A v - lambda v|| / ||v||; negative if not computed
  EvClass cls = EvClass::unclassified;
  double localization = 0.0;  // eigenvector mass fraction in |x| <= X/2
};

/// Classified spectrum of one assembled operator, with provenance.
struct SpectrumReport {
  std::vector<EigenEntry> entries;  // sorted by (re, im)
  ModelParams params;
  Grid grid;
  OperatorKind kind = OperatorKind::L;
  std::string label;
  std::string solver;
  double elapsed_ms = 0.0;
  double gap_lo = 0.0;  // essential-spectrum gap for this operator
  double gap_hi = 0.0;
  bool has_vectors = false;
  Eigen::MatrixXcd vectors;  // column i corresponds to entries[i]
};

struct EigOptions {
  bool want_vectors = false;
  enum class Residuals { all, gap_band, none };
  Residuals residuals = Residuals::all;
  double classify_delta = -1.0;  // < 0: default 0.02 (m - omega)
};

/// Full spectrum of a symmetric operator, ascending, with residuals
/// recomputed from the original matrix and gap classification applied.
SpectrumReport eig_hermitian(const DiscreteOperator& op, const EigOptions& opts = {});

/// Spectrum of the nonsymmetric H-square block. `zsq` holds the raw spectrum
/// of L_0 L_mu; `z` the derived set {+sqrt, -sqrt} completed across both
/// axes, each value tied to its parent residual and localization.
struct HSpectrum {
  SpectrumReport z;
  SpectrumReport zsq;
};

HSpectrum eig_general(const DiscreteOperator& op, const EigOptions& opts = {});

/// (Re)classify entries: inside the gap and localized => gap_point, within
/// delta of an edge => edge_ambiguous, otherwise essential_cluster.
void classify_gap(SpectrumReport& report, double delta);

/// Eigenvalues classified gap_point, sorted ascending by real part.
std::vector<double> gap_point_values(const SpectrumReport& report);

/// t = min of sigma(L_0 + omega) in (omega, m]: the smallest positive gap
/// eigenvalue of L_0 shifted by omega, or m if there is none.
double estimate_t(const SpectrumReport& l0_report);

struct ZeroMultiplicityReport {
  double l_value = 0.0;       // <phi0, L_mu^{-1} phi0> on the even sector
  double smin_estimate = 0.0; // estimated smallest singular value of the sector
  int kernel_dim = -1;        // singular values of L_0 L_mu below 1e-8 * max
  bool sector_invertible = false;
  std::string verdict;        // "multiplicity-2" or "suspicious"
};

struct ComputeLOptions {
  bool with_kernel_count = true;
};

/// l(mu) = <phi0, L_mu^{-1} phi0> with L_mu restricted to the even sector;
/// at mu = 2, 2 l(2) equals the frequency derivative of ||phi0||^2.
ZeroMultiplicityReport compute_l(const ModelParams& params, const Grid& grid,
                                 const ComputeLOptions& opts = {});

struct FirstEigenvalueBound {
  bool found = false;
  bool pass = false;
  double lambda1 = 0.0;
  double lower_bound = 0.0;  // -mu ||Q||
  double margin_lower = 0.0; // lambda1 - lower_bound
  double margin_upper = 0.0; // -lambda1
};

/// Locates the smallest gap eigenvalue of L_mu strictly above -2 omega and
/// checks -mu ||Q|| <= lambda_1 < 0.
FirstEigenvalueBound first_eigenvalue_bound_check(const ModelParams& params,
                                                  const Grid& grid);

/// Count of singular values below rel_thresh * s_max.
int small_singular_count(const Eigen::MatrixXd& a, double rel_thresh = 1e-8);

/// A-posteriori check of the eigenvalue identity
///   Re z^2 = <p1, (P+ L_mu P+ - P- L_mu P-) p1> / <p1, |L_0|^{-1} p1>
/// for an off-axis eigenvector p1 of L_0 L_mu, using the spectral projectors
/// of L_0 onto (0, inf) and (-inf, -2 omega). Requires L_0 eigenvectors.
double identity_re_z2(const SpectrumReport& l0_with_vectors,
                      const Eigen::MatrixXd& lmu_matrix,
                      const Eigen::VectorXcd& phi1);

}  // namespace dsl

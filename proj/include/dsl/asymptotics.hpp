#pragma once

#include <array>
#include <string>
#include <vector>

#include "dsl/grid.hpp"
#include "dsl/params.hpp"
#include "dsl/spectra.hpp"

namespace dsl {

/// The Poschl-Teller parameter: the positive root of
/// s(s+1) = (p+1)(1+p mu)/p^2. At mu = 2 it equals (p+1)/p.
double s_parameter(double p, double mu);

/// Poschl-Teller levels E_j = -(s+1-j)^2/2 for j = 1..ceil(s); all negative.
std::vector<double> pt_levels(double s);

/// Leading-order gap eigenvalue prediction
///   lambda_k = (1 - p^2 (s+1-k)^2) kappa^2 / (2m),   1 <= k <= ceil(s).
/// Throws for k beyond ceil(s): only the lower bound m - omega applies there.
double lambda_expansion(const ModelParams& params, int k);

struct LadderLevel {
  int k;
  double pt_level;   // E_k
  double lambda_k;   // leading-order prediction
};

struct ExpansionLadder {
  double s = 0.0;
  int ceil_s = 0;
  std::vector<LadderLevel> levels;
};

ExpansionLadder build_ladder(const ModelParams& params);

struct ComparisonRow {
  int k;
  double predicted;
  double computed;
  double abs_err;
  double rel_err;  // abs_err / |predicted|; +inf when predicted == 0
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  int gap_count = 0;        // eigenvalues strictly above -2 omega in the gap
  int expected_min = 0;     // ceil(s)
  bool count_ok = false;
  double lambda_next = 0.0;  // first eigenvalue beyond the ladder, if any
  bool has_lambda_next = false;
};

/// Pairs ladder predictions with the computed gap spectrum of L_mu.
ComparisonTable compare_to_spectrum(const ModelParams& params, const Grid& grid);

struct SupNormPair {
  std::string name;
  double closed;        // closed-form supremum
  double grid_max;      // refined grid maximum of the profile expression
  double x_analytic;    // analytic maximizer (rescaled variable, x >= 0)
  double x_grid;        // grid maximizer after golden-section polish
};

/// The four profile sup-norms with closed-form values:
///   (v~^2-u~^2)^p, (v~^2-u~^2)^{p-1} u~ v~, (v~^2-u~^2)^{p-1} u~^2,
///   (v~^2-u~^2)^p - (p+1) kappa^2 / (2 m cosh^2).
std::array<SupNormPair, 4> appendix_sup_norms(const ModelParams& params);

}  // namespace dsl

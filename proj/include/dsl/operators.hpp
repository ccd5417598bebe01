#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "dsl/grid.hpp"
#include "dsl/model.hpp"
#include "dsl/params.hpp"

namespace dsl {

enum class OperatorKind {
  L,                 // D_m - omega - (v^2-u^2)^p sigma_3 - mu Q, 2N x 2N
  Q,                 // pointwise multiplication operator, 2N x 2N
  HSquareBlock,      // L_0 L_mu, 2N x 2N, nonsymmetric
  SchrodingerMinus,  // -d^2/dx^2 + M^2 - M', N x N
  SchrodingerPlus,   // -d^2/dx^2 + M^2 + M', N x N
};

enum class ParitySelector { full, even, odd };

/// Dense matrix representation of an operator on a Grid. Spinor layout is
/// component-major: the first N entries are the upper component samples, the
/// last N the lower ones. All operators here are real in this basis.
struct DiscreteOperator {
  Eigen::MatrixXd matrix;
  Grid grid;
  ModelParams params;
  OperatorKind kind = OperatorKind::L;
  std::string label;
  bool parity_compatible = true;
  int components = 2;  // values per grid point (1 for the Schrodinger pair)
  ParitySelector sector = ParitySelector::full;
  Eigen::MatrixXd sector_basis;  // full-dim x sector-dim, orthonormal columns

  int dim() const { return static_cast<int>(matrix.rows()); }
};

struct AssemblyOptions {
  bool allow_undersized = false;  // override the grid sizing-rule guard
};

/// Antisymmetric Fourier spectral differentiation matrix for the periodic
/// grid; exact on resolved Fourier modes and annihilates constants.
Eigen::MatrixXd fourier_derivative_matrix(const Grid& grid);

/// Fourier spectral second-derivative matrix (symbol -k^2, Nyquist included).
Eigen::MatrixXd fourier_second_derivative_matrix(const Grid& grid);

/// L_mu = D_m - omega I - (v^2-u^2)^p sigma_3 - mu Q with the convention
/// (alpha, beta) = (-sigma_2, sigma_3); real symmetric in this basis.
/// Rejects grids smaller than half the sizing rule unless overridden.
DiscreteOperator assemble_L(const ModelParams& params, const Grid& grid,
                            const AssemblyOptions& opts = {});

/// The multiplication operator Q; positive semi-definite, each 2x2 block of
/// rank one with nonzero eigenvalue p (v^2-u^2)^{p-1}(v^2+u^2).
DiscreteOperator assemble_Q(const ModelParams& params, const Grid& grid);

/// The 2N x 2N product L_0 L_mu whose eigenvalues are the z^2 of the
/// linearized operator; the 4N x 4N block operator is never formed.
DiscreteOperator assemble_H_square_block(const ModelParams& params, const Grid& grid,
                                         const AssemblyOptions& opts = {});

/// The pair (-d^2/dx^2 + M^2 - M', -d^2/dx^2 + M^2 + M'); both share the
/// lowest eigenvalue omega^2 with nodeless groundstates v+u and v-u.
std::pair<DiscreteOperator, DiscreteOperator> assemble_schrodinger_pair(
    const ModelParams& params, const Grid& grid);

/// Orthonormal basis of the chosen parity sector as matrix columns.
/// An "even" 2-spinor has even first and odd second component.
Eigen::MatrixXd parity_basis(const Grid& grid, ParitySelector sector, int components);

/// Restriction B^T A B of a parity-compatible operator to one sector.
/// Throws if the operator fails the commutation test with the projector.
DiscreteOperator restrict_parity(const DiscreteOperator& op, ParitySelector sector);

/// Profile samples stacked component-major on the grid.
Eigen::VectorXd sample_phi0(const ModelParams& params, const Grid& grid);
Eigen::VectorXd sample_sigma1_phi0(const ModelParams& params, const Grid& grid);
Eigen::VectorXd sample_dx_phi0(const ModelParams& params, const Grid& grid);

/// max_ij |A_ij - A_ji| (0 for exactly symmetric assemblies).
double symmetry_defect(const Eigen::MatrixXd& a);

}  // namespace dsl

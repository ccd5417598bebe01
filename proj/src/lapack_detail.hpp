#pragma once

#include <Eigen/Dense>

namespace dsl::detail {

struct SymEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, empty if not requested
};

/// Dense symmetric eigendecomposition (LAPACK dsyevd).
SymEig sym_eig(const Eigen::MatrixXd& a, bool want_vectors);

struct GenEig {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // empty if not requested
};

/// Dense real nonsymmetric eigendecomposition (LAPACK dgeev).
GenEig gen_eig(const Eigen::MatrixXd& a, bool want_vectors);

/// Singular values, descending (LAPACK dgesdd, values only).
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

struct SolveResult {
  Eigen::VectorXd x;
  double rcond;  // 1-norm reciprocal condition estimate of the matrix
};

/// LU solve with condition estimate (dgesv + dgecon).
SolveResult solve_linear(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace dsl::detail

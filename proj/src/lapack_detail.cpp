#include "lapack_detail.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace dsl::detail {

namespace {
[[noreturn]] void fail(const char* routine, int info) {
  throw std::runtime_error(std::string(routine) + " failed, info = " + std::to_string(info));
}
}  // namespace

SymEig sym_eig(const Eigen::MatrixXd& a, bool want_vectors) {
  const int n = static_cast<int>(a.rows());
  SymEig out;
  out.values.resize(n);
  Eigen::MatrixXd work = a;  // dsyevd overwrites with eigenvectors
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'U', n,
                                  work.data(), n, out.values.data());
  if (info != 0) fail("dsyevd", info);
  if (want_vectors) out.vectors = std::move(work);
  return out;
}

GenEig gen_eig(const Eigen::MatrixXd& a, bool want_vectors) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd work = a;
  std::vector<double> wr(n), wi(n);
  Eigen::MatrixXd vr;
  if (want_vectors) vr.resize(n, n);
  const int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, work.data(), n,
                    wr.data(), wi.data(), nullptr, 1, want_vectors ? vr.data() : nullptr,
                    want_vectors ? n : 1);
  if (info != 0) fail("dgeev", info);

  GenEig out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values(i) = {wr[i], wi[i]};
  if (want_vectors) {
    out.vectors.resize(n, n);
    for (int j = 0; j < n; ++j) {
      if (wi[j] > 0.0 && j + 1 < n) {
        // complex conjugate pair packed in columns j, j+1
        out.vectors.col(j) = vr.col(j).cast<std::complex<double>>() +
                             std::complex<double>(0, 1) * vr.col(j + 1).cast<std::complex<double>>();
        out.vectors.col(j + 1) = out.vectors.col(j).conjugate();
        ++j;
      } else {
        out.vectors.col(j) = vr.col(j).cast<std::complex<double>>();
      }
    }
  }
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Eigen::MatrixXd work = a;
  Eigen::VectorXd s(std::min(m, n));
  const int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(),
                                  nullptr, 1, nullptr, 1);
  if (info != 0) fail("dgesdd", info);
  return s;
}

SolveResult solve_linear(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd lu = a;
  Eigen::VectorXd x = b;
  std::vector<lapack_int> ipiv(n);
  const double anorm = LAPACKE_dlange(LAPACK_COL_MAJOR, '1', n, n, a.data(), n);
  int info = LAPACKE_dgesv(LAPACK_COL_MAJOR, n, 1, lu.data(), n, ipiv.data(), x.data(), n);
  if (info != 0) fail("dgesv", info);
  double rcond = 0.0;
  info = LAPACKE_dgecon(LAPACK_COL_MAJOR, '1', n, lu.data(), n, anorm, &rcond);
  if (info != 0) fail("dgecon", info);
  return {std::move(x), rcond};
}

}  // namespace dsl::detail

#include "ribcat/numerics.hpp"

#include <Eigen/SVD>

namespace ribcat {

RankFactorization rank_factorize(const Matrix& P, const Tolerance& tol) {
  if (P.rows() != P.cols()) throw error("ShapeMismatch", "rank_factorize needs a square matrix");
  const double scale = std::max(1.0, inf_norm(P));
  if (inf_norm(P * P - P) > tol.abs_eps * scale * 100)
    throw error("NotIdempotent", "matrix is not idempotent within tolerance, residual " +
                                     std::to_string(inf_norm(P * P - P)));

  RankFactorization out;
  if (P.rows() == 0) return out;

  Eigen::JacobiSVD<Matrix> svd(P, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol.rank_eps * std::max(1.0, sv(0))) ++r;

  // For an idempotent, P restricted to its range is the identity, so the
  // range basis U_r together with U_r^dagger * P splits P exactly.
  out.embed = svd.matrixU().leftCols(r);
  out.restrict_ = out.embed.adjoint() * P;
  out.rank = r;
  return out;
}

Matrix solve_intertwiner_space(const Matrix& constraint_rows, const Tolerance& tol) {
  const Eigen::Index n = constraint_rows.cols();
  if (constraint_rows.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(constraint_rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol.rank_eps * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

PerronResult perron_vector(const Eigen::MatrixXd& M, int max_iter, double conv_eps) {
  if (M.rows() != M.cols()) throw error("ShapeMismatch", "perron_vector needs a square matrix");
  if ((M.array() < 0).any()) throw error("MalformedData", "perron_vector needs nonnegative entries");
  const Eigen::Index n = M.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  double lambda = 0;
  // power iteration on M + I so that convergence is monotone also for
  // matrices with spectral symmetry (e.g. bipartite fusion graphs)
  Eigen::MatrixXd Ms = M + Eigen::MatrixXd::Identity(n, n);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = Ms * v;
    double nrm = w.norm();
    if (nrm == 0) throw error("NotConverged", "matrix annihilates the positive cone");
    w /= nrm;
    double diff = (w - v).norm();
    v = w;
    lambda = v.dot(Ms * v);
    if (diff < conv_eps) {
      PerronResult out;
      if (std::abs(v(0)) < 1e-14) throw error("NotConverged", "leading eigenvector vanishes at entry 0");
      out.vec = v / v(0);
      out.value = lambda - 1.0;
      return out;
    }
  }
  throw error("NotConverged", "power iteration did not converge");
}

}  // namespace ribcat

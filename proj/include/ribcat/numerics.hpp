#ifndef RIBCAT_NUMERICS_HPP
#define RIBCAT_NUMERICS_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ribcat {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Error with a short machine-readable code ("NotIdempotent", "ShapeMismatch", ...)
/// followed by a human-readable message.
class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Tolerance policy shared by all approximate comparisons.
/// rank_eps is the singular-value cutoff used in rank decisions.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;
  double rank_eps = 1e-7;

  Tolerance() = default;
  Tolerance(double a, double r, double rk) : abs_eps(a), rel_eps(r), rank_eps(rk) {
    if (abs_eps <= 0 || rel_eps <= 0 || rank_eps <= 0)
      throw error("MalformedData", "tolerances must be strictly positive");
  }
};

inline bool approx_eq(Scalar a, Scalar b, const Tolerance& tol) {
  double m = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tol.abs_eps + tol.rel_eps * m;
}

inline bool approx_zero(Scalar a, const Tolerance& tol) {
  return approx_eq(a, Scalar(0), tol);
}

inline bool is_finite(Scalar a) {
  return std::isfinite(a.real()) && std::isfinite(a.imag());
}

inline double inf_norm(const Matrix& m) {
  double r = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
  return r;
}

struct RankFactorization {
  Matrix embed;     // n x r, columns span the range of P
  Matrix restrict_; // r x n, restrict_ * embed = I_r
  Eigen::Index rank = 0;
};

/// Split an (approximate) idempotent P = E*R with R*E = id_rank.
/// Throws NotIdempotent when ||P^2 - P|| exceeds the tolerance.
RankFactorization rank_factorize(const Matrix& P, const Tolerance& tol);

/// Orthonormal basis of the null space of the constraint matrix, at the
/// rank_eps singular-value cutoff. The returned columns are the basis.
Matrix solve_intertwiner_space(const Matrix& constraint_rows, const Tolerance& tol);

/// Perron eigenvector of a nonnegative real matrix, normalized so that the
/// first entry is 1. Also returns the leading eigenvalue.
struct PerronResult {
  Eigen::VectorXd vec;
  double value = 0;
};
PerronResult perron_vector(const Eigen::MatrixXd& M, int max_iter = 10000,
                           double conv_eps = 1e-13);

}  // namespace ribcat

#endif

#include "doctest.h"

#include "ribcat/numerics.hpp"

using namespace ribcat;

TEST_CASE("approx_eq tolerance policy") {
  Tolerance tol;
  CHECK(approx_eq(Scalar(1.0), Scalar(1.0 + 1e-12), tol));
  CHECK_FALSE(approx_eq(Scalar(1.0), Scalar(1.1), tol));
  CHECK(approx_eq(Scalar(0.0), Scalar(5e-10), tol));  // abs_eps dominates at zero
  CHECK_THROWS_AS(Tolerance(0.0, 1e-9, 1e-7), error);
}

TEST_CASE("rank_factorize splits idempotents") {
  Tolerance tol;
  Matrix p(2, 2);
  p << 1, 0, 0, 0;
  auto rf = rank_factorize(p, tol);
  CHECK(rf.rank == 1);
  CHECK(inf_norm(rf.embed * rf.restrict_ - p) < 1e-12);
  CHECK(inf_norm(rf.restrict_ * rf.embed - Matrix::Identity(1, 1)) < 1e-12);

  Matrix id3 = Matrix::Identity(3, 3);
  auto rf3 = rank_factorize(id3, tol);
  CHECK(rf3.rank == 3);
  CHECK(inf_norm(rf3.embed * rf3.restrict_ - id3) < 1e-12);

  Matrix half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  auto rfh = rank_factorize(half, tol);
  CHECK(rfh.rank == 1);
  CHECK(inf_norm(rfh.embed * rfh.restrict_ - half) < 1e-12);

  Matrix bad(2, 2);
  bad << 1, 1, 1, 1;  // not idempotent
  CHECK_THROWS_AS(rank_factorize(bad, tol), error);
}

TEST_CASE("solve_intertwiner_space null bases") {
  Tolerance tol;
  CHECK(solve_intertwiner_space(Matrix::Zero(1, 3), tol).cols() == 3);
  CHECK(solve_intertwiner_space(Matrix::Identity(3, 3), tol).cols() == 0);
  Matrix row(1, 3);
  row << 1, -1, 0;
  Matrix basis = solve_intertwiner_space(row, tol);
  CHECK(basis.cols() == 2);
  for (int c = 0; c < basis.cols(); ++c)
    CHECK(std::abs(Scalar((row * basis.col(c))(0, 0))) < 10 * tol.rank_eps);
}

TEST_CASE("perron_vector leading eigendata") {
  Eigen::MatrixXd one(1, 1);
  one << 1;
  auto p1 = perron_vector(one);
  CHECK(p1.vec(0) == doctest::Approx(1.0));

  Eigen::MatrixXd fib(2, 2);
  fib << 0, 1, 1, 1;
  auto pf = perron_vector(fib);
  CHECK(pf.value == doctest::Approx(1.618033988749895).epsilon(1e-10));

  Eigen::MatrixXd ising(3, 3);
  ising << 0, 0, 1, 0, 0, 1, 1, 1, 0;
  auto pi = perron_vector(ising);
  CHECK(pi.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

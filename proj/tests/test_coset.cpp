#include "doctest.h"

#include "ribcat/catalog.hpp"
#include "ribcat/coset.hpp"

using namespace ribcat;

TEST_CASE("Q-haploidity predicate") {
  auto toric = load_builtin("toric_code");
  auto prod = deligne_product(toric, toric);
  // L = 1x1 is Q-haploid
  auto triv = trivial_algebra(prod);
  CHECK(check_Q_haploid(prod, triv));
  // L = (1+e) x 1 is not
  auto e1 = group_algebra(prod, {product_label(*prod, 1, 0)});
  CHECK_FALSE(check_Q_haploid(prod, e1));
  // L = 1 x (1+e) is
  auto e2 = group_algebra(prod, {product_label(*prod, 0, 1)});
  CHECK(check_Q_haploid(prod, e2));
}

TEST_CASE("separability scan") {
  CHECK(check_separable(load_builtin("ising")).separable);
  CHECK(check_separable(load_builtin("toric_code")).separable);
  auto bad = std::make_shared<SkeletalCategory>(*load_builtin("ising"));
  bad->dims[1] = 0.0;
  auto rep = check_separable(bad);
  CHECK_FALSE(rep.separable);
  CHECK(rep.witness == 1);
}

TEST_CASE("coset closed loop: Q = Vec, H = toric, L = 1 x (1+e)") {
  auto vec = load_builtin("vec");
  auto toric = load_builtin("toric_code");
  auto qh = deligne_product(vec, toric);
  auto l = group_algebra(qh, {product_label(*qh, 0, 1)});
  CosetReport rep = coset_pipeline(vec, toric, l);
  CAPTURE(rep.detail);
  CAPTURE(rep.equivalence.detail);
  CHECK(rep.q_haploid);
  CHECK(rep.g_summary.dims_A.size() == 1);
  CHECK(rep.gamma_trivial);
  CHECK(rep.gamma_trace_residual < 1e-9);
  CHECK(rep.lprime_dim == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.dim_relation_residual < 1e-9);
  CHECK(rep.equivalence.matched);
  CHECK(rep.passed);
}

TEST_CASE("coset closed loop: Q = dual(fibonacci), H = fibonacci, L = T") {
  auto fib = load_builtin("fibonacci");
  auto q = dual_category(fib);
  auto qh = deligne_product(q, fib);
  auto l = build_trivializing_algebra_in(qh);
  CosetReport rep = coset_pipeline(q, fib, l);
  CAPTURE(rep.detail);
  CAPTURE(rep.equivalence.detail);
  CHECK(rep.q_haploid);
  CHECK(rep.g_summary.dims_A.size() == 1);
  CHECK(rep.gamma_trivial);
  CHECK(rep.lprime_dim == doctest::Approx(1.0).epsilon(1e-9));
  double phi = 1.618033988749895;
  CHECK(rep.dim_relation_residual < 1e-9);
  CHECK(l.dim() == doctest::Approx(1 + phi * phi));
  CHECK(rep.equivalence.matched);
  CHECK(rep.passed);
}

TEST_CASE("coset closed loop: Q = dual(ising), H = ising, L = T") {
  auto ising = load_builtin("ising");
  auto q = dual_category(ising);
  auto qh = deligne_product(q, ising);
  auto l = build_trivializing_algebra_in(qh);
  CosetReport rep = coset_pipeline(q, ising, l);
  CAPTURE(rep.detail);
  CAPTURE(rep.equivalence.detail);
  CHECK(rep.q_haploid);
  CHECK(rep.g_summary.dims_A.size() == 1);
  CHECK(rep.gamma_trivial);
  CHECK(rep.gamma_trace_residual < 1e-9);
  CHECK(rep.lprime_dim == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.dim_relation_residual < 1e-9);
  CHECK(rep.equivalence.matched);
  CHECK(rep.passed);
}

#include "doctest.h"

#include "ribcat/catalog.hpp"
#include "ribcat/quotient.hpp"
#include "ribcat/trivialize.hpp"

using namespace ribcat;

namespace {

// labels of a factor algebra embedded into a pointed product category
FrobeniusAlgebra embed_group_algebra(const CategoryPtr& prod, const std::vector<Label>& labels,
                                     bool second_factor) {
  std::vector<Label> lifted;
  for (Label l : labels)
    lifted.push_back(second_factor ? product_label(*prod, 0, l) : product_label(*prod, l, 0));
  return group_algebra(prod, lifted);
}

}  // namespace

TEST_CASE("lift_algebra_E basics") {
  auto cat = load_builtin("ising");
  auto triv = trivial_algebra(cat);
  auto ss = load_builtin_algebra(cat, "dual_object:s");
  // E_1(B) = B
  FrobeniusAlgebra e = lift_algebra_E(triv, ss, Side::left);
  CHECK(e.obj == ss.obj);
  CHECK(is_ssfa(e));
  // E_A(1) = C_l(A)
  FrobeniusAlgebra c = lift_algebra_E(ss, triv, Side::left);
  CenterResult cl = center(ss, Side::left);
  CHECK(c.obj == cl.C.obj);
}

TEST_CASE("tensor_center_check on toric x toric") {
  auto toric = load_builtin("toric_code");
  auto prod = deligne_product(toric, toric);
  auto a = embed_group_algebra(prod, {1}, false);  // (1+e) x 1
  auto b = embed_group_algebra(prod, {1}, true);   // 1 x (1+e)
  CHECK(is_commutative_ssfa(a));
  CHECK(is_commutative_ssfa(b));
  auto rep = tensor_center_check(a, b);
  CAPTURE(rep.detail);
  CHECK(rep.object_match_l);
  CHECK(rep.object_match_r);
  CHECK(rep.flags_match);
}

TEST_CASE("tensor_center_check with trivial factors") {
  auto cat = load_builtin("ising");
  auto t = trivial_algebra(cat);
  auto rep = tensor_center_check(t, t);
  CHECK(rep.object_match_l);
  CHECK(rep.object_match_r);
}

TEST_CASE("transport of local modules between the centers") {
  auto cat = load_builtin("ising");
  auto a = load_builtin_algebra(cat, "dual_object:s");  // Azumaya: centers trivial
  CenterResult cl = center(a, Side::left);
  auto clp = std::make_shared<FrobeniusAlgebra>(cl.C);
  auto simples = enumerate_simple_modules(clp);
  for (auto& s : simples) {
    if (!is_local(s)) continue;
    AModule moved = transport_local_module(s, a);
    CHECK(moved.mdot == s.mdot);  // identity on objects in the Azumaya case
    CHECK(std::abs(moved.dim() - s.dim()) < 1e-9);
    CHECK(twist_scalar(moved).has_value());
    CHECK(std::abs(*twist_scalar(moved) - *twist_scalar(s)) < 1e-9);
    double res;
    CHECK(check_module(moved, &res));
  }
}

TEST_CASE("transport maps the regular module to the regular module") {
  auto toric = load_builtin("toric_code");
  auto a = load_builtin_algebra(toric, "simple_current:0.1");
  // commutative: C_l = C_r = A, transport is naturally trivial
  CenterResult cl = center(a, Side::left);
  AModule reg = regular_module(std::make_shared<FrobeniusAlgebra>(cl.C));
  AModule moved = transport_local_module(reg, a);
  CHECK(moved.dim() == doctest::Approx(reg.dim()));
  AModule target_reg = regular_module(moved.alg);
  CHECK(hom_module_dim(moved, target_reg) == 1);
}

TEST_CASE("iterated extension on toric x toric") {
  auto toric = load_builtin("toric_code");
  auto prod = deligne_product(toric, toric);
  auto a = embed_group_algebra(prod, {1}, false);
  auto b = embed_group_algebra(prod, {1}, true);
  IterExtReport rep = verify_iterated_extension(a, b);
  CAPTURE(rep.match.detail);
  CHECK(rep.match.matched);
  CHECK(rep.inner.dims_A.size() == rep.outer.dims_A.size());
  // the composite algebra E_A(B) is the Lagrangian (1+e) x (1+e), so the
  // matching summaries are rank 1; the intermediate stage C_A^loc is the
  // rank-4 toric-like category
  CHECK(rep.outer.dims_A.size() == 1);
  QuotientSummary mid = quotient_summary(std::make_shared<FrobeniusAlgebra>(a));
  CHECK(mid.dims_A.size() == 4);
  QuotientSummary toric_sum = category_as_summary(toric);
  CHECK(match_summaries(mid, toric_sum, toric->tol).matched);
}

TEST_CASE("iterated extension with trivial B") {
  auto toric = load_builtin("toric_code");
  auto a = load_builtin_algebra(toric, "simple_current:0.1");
  auto b = trivial_algebra(toric);
  IterExtReport rep = verify_iterated_extension(a, b);
  CHECK(rep.match.matched);
  CHECK(rep.outer.dims_A.size() == 1);  // toric quotient by the Lagrangian
}

TEST_CASE("iterated extension on fib x fib-bar") {
  auto tr = build_trivializing_algebra(load_builtin("fibonacci"));
  // A = B = T violates the specialness hypothesis on E_A(B): the composite
  // is 2*(1,1~)+2*(t,t~) with a non-scalar m o Delta, and the op says so
  CHECK_THROWS_WITH_AS(verify_iterated_extension(tr.T, tr.T),
                       doctest::Contains("special"), error);
  // the nondegenerate instance B = 1 gives the trivial summary on both sides
  auto triv = trivial_algebra(tr.product);
  IterExtReport rep = verify_iterated_extension(tr.T, triv);
  CHECK(rep.match.matched);
  CHECK(rep.outer.dims_A.size() == 1);
}

#include "doctest.h"

#include "ribcat/catalog.hpp"
#include "ribcat/module.hpp"

using namespace ribcat;

TEST_CASE("regular and induced modules over 1+e in toric code") {
  auto cat = load_builtin("toric_code");
  auto alg = std::make_shared<FrobeniusAlgebra>(load_builtin_algebra(cat, "simple_current:0.1"));
  AModule reg = regular_module(alg);
  CHECK(check_module(reg));
  AModule ind_m = induced_module(alg, ObjectSum(cat, 2));  // U = m
  CHECK(check_module(ind_m));
  CHECK(ind_m.mdot.mult_of(2) == 1);  // m
  CHECK(ind_m.mdot.mult_of(3) == 1);  // f
  // corrupted rho
  AModule bad = ind_m;
  bad.rho *= 1.1;
  CHECK_FALSE(check_module(bad));
}

TEST_CASE("simple modules over 1+e and their locality") {
  auto cat = load_builtin("toric_code");
  auto alg = std::make_shared<FrobeniusAlgebra>(load_builtin_algebra(cat, "simple_current:0.1"));
  auto simples = enumerate_simple_modules(alg);
  REQUIRE(simples.size() == 2);
  int n_local = 0;
  for (auto& s : simples) {
    CHECK(hom_module_dim(s, s) == 1);
    if (is_local(s)) ++n_local;
  }
  CHECK(n_local == 1);
  // decomposition completeness over every simple object
  for (Label i = 0; i < cat->rank; ++i) {
    AModule ind = induced_module(alg, ObjectSum(cat, i));
    ObjectSum total(cat);
    for (auto& s : simples) {
      int mult = hom_module_dim(ind, s);
      if (!mult) continue;
      for (auto& [lab, mm] : s.mdot.mult) total.mult[lab] += mult * mm;
    }
    CHECK(total == ind.mdot);
  }
}

TEST_CASE("hom reciprocity for induced modules") {
  auto cat = load_builtin("toric_code");
  auto alg = std::make_shared<FrobeniusAlgebra>(load_builtin_algebra(cat, "simple_current:0.1"));
  AModule ind_m = induced_module(alg, ObjectSum(cat, 2));
  // dim Hom_A(Ind(m), Ind(m)) = dim Hom(m, A (x) m) = 1... A(x)m = m+f so = 1
  CHECK(hom_module_dim(ind_m, ind_m) == 1);
  AModule reg = regular_module(alg);
  CHECK(hom_module_dim(reg, reg) == 1);  // haploid
}

TEST_CASE("tensor over A reproduces the quotient fusion (toric 1+e)") {
  auto cat = load_builtin("toric_code");
  auto alg = std::make_shared<FrobeniusAlgebra>(load_builtin_algebra(cat, "simple_current:0.1"));
  AModule reg = regular_module(alg);
  TensorOverA aa = tensor_over_A(reg, reg);
  CHECK(aa.mod.dim() == doctest::Approx(2.0));  // A (x)_A A = A
  CHECK(hom_module_dim(aa.mod, reg) == 1);
  // dim(M (x)_A N) = dim M dim N / dim A on all local pairs
  CHECK(aa.mod.dim() == doctest::Approx(reg.dim() * reg.dim() / alg->dim()));
}

TEST_CASE("quotient summary of the toric Lagrangian 1+e") {
  auto cat = load_builtin("toric_code");
  auto alg = std::make_shared<FrobeniusAlgebra>(load_builtin_algebra(cat, "simple_current:0.1"));
  QuotientSummary s = quotient_summary(alg);
  CHECK(s.dims_A.size() == 1);
  CHECK(s.dim_loc == doctest::Approx(1.0));
  CHECK(s.dims_A[0] == doctest::Approx(1.0));
  CHECK(s.modular_claimed);
  CHECK(s.modular);
  // Dim and charge ratios against the ambient category
  auto g = global_dim_and_charges(cat);
  CHECK(s.dim_loc == doctest::Approx(g.dim / (alg->dim() * alg->dim())));
  CHECK(std::abs(s.p_plus_loc - g.p_plus / alg->dim()) < 1e-9);
}

TEST_CASE("alpha induction over toric 1+e") {
  auto cat = load_builtin("toric_code");
  auto a = load_builtin_algebra(cat, "simple_current:0.1");
  auto z = alpha_z_matrix(a);
  // charge-zero block pattern: Z~_{00} = 1, 0/1 entries
  CHECK(z(0, 0) == 1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK((z(i, j) == 0 || z(i, j) == 1));
  // row sums match the E-decompositions: columns for m and f vanish
  CHECK(z.col(2).sum() == 0);
  CHECK(z.col(3).sum() == 0);
  CHECK(z.col(0).sum() == 2);
  CHECK(z.col(1).sum() == 2);

  // dim E_A(U) = s_{U,A} for all U
  for (Label u = 0; u < cat->rank; ++u)
    CHECK(dim_local_induction_check(a, ObjectSum(cat, u)) < 1e-9);
}

TEST_CASE("alpha induction of the sigma dual-object algebra is trivial (Azumaya)") {
  auto cat = load_builtin("ising");
  auto a = load_builtin_algebra(cat, "dual_object:s");
  auto z = alpha_z_matrix(a);
  CHECK(z == Eigen::MatrixXi::Identity(3, 3));
  // both centers are the tensor unit
  CenterResult cl = center(a, Side::left);
  CenterResult cr = center(a, Side::right);
  CHECK(cl.C.obj.total_mult() == 1);
  CHECK(cl.C.obj.mult_of(0) == 1);
  CHECK(cr.C.obj.mult_of(0) == 1);
  // E^l_A(U_j) = U_j for all j
  for (Label j = 0; j < cat->rank; ++j) {
    LocalInduction e = local_induction_object(a, ObjectSum(cat, j), Side::left);
    CHECK(e.obj == ObjectSum(cat, j));
  }
}

TEST_CASE("central idempotents: properties") {
  auto cat = load_builtin("ising");
  auto a = load_builtin_algebra(cat, "dual_object:s");
  for (Side side : {Side::left, Side::right}) {
    Morphism p = central_idempotent(a, side);
    CHECK((compose(p, p) - p).norm_inf() < 1e-10);
    // twist trivialization theta_A o P = P
    Morphism th = twist_morphism(cat, a.t1());
    CHECK((compose(th, p) - p).norm_inf() < 1e-10);
    // unit and counit compatibility
    CHECK((compose(p, a.eta) - a.eta).norm_inf() < 1e-10);
    CHECK((compose(a.eps, p) - a.eps).norm_inf() < 1e-10);
  }
  // commutative algebra: P = id and P^l(U) = P^r(U)
  auto toric = load_builtin("toric_code");
  auto c = load_builtin_algebra(toric, "simple_current:0.1");
  Morphism pl = central_idempotent(c, Side::left);
  CHECK((pl - identity(toric, c.t1())).norm_inf() < 1e-10);
  for (Label u = 0; u < toric->rank; ++u) {
    Morphism pu_l = local_induction_idempotent(c, ObjectSum(toric, u), Side::left);
    Morphism pu_r = local_induction_idempotent(c, ObjectSum(toric, u), Side::right);
    CHECK((pu_l - pu_r).norm_inf() < 1e-10);
  }
}

TEST_CASE("Z multiplicativity") {
  auto cat = load_builtin("toric_code");
  auto e = load_builtin_algebra(cat, "simple_current:0.1");
  auto m = load_builtin_algebra(cat, "simple_current:0.0,1.0");
  CHECK(z_multiplicativity_check(e, m) == 0);
  auto ising = load_builtin("ising");
  auto ss = load_builtin_algebra(ising, "dual_object:s");
  CHECK(z_multiplicativity_check(ss, ss) == 0);
}

TEST_CASE("thm:equiv comparator on an Azumaya algebra") {
  auto cat = load_builtin("ising");
  auto a = load_builtin_algebra(cat, "dual_object:s");
  EquivReport rep = verify_thm_equiv(a);
  CHECK(rep.match.matched);
  CHECK(rep.left.dims_A.size() == 3);  // centers trivial, quotients = Ising itself
  QuotientSummary amb = category_as_summary(cat);
  CHECK(match_summaries(rep.left, amb, cat->tol).matched);
}

TEST_CASE("local module heredity: summands of local modules are local") {
  auto cat = load_builtin("toric_code");
  auto alg = std::make_shared<FrobeniusAlgebra>(
      load_builtin_algebra(cat, "simple_current:0.1"));
  auto simples = enumerate_simple_modules(alg);
  AModule sum = module_direct_sum(simples);
  CHECK(check_module(sum));
  // the sum contains a non-local summand, so it is not local
  CHECK_FALSE(is_local(sum));
}

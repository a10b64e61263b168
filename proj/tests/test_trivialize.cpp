#include "doctest.h"

#include "ribcat/catalog.hpp"
#include "ribcat/trivialize.hpp"

using namespace ribcat;

TEST_CASE("trivializing algebra of vec") {
  auto tr = build_trivializing_algebra(load_builtin("vec"));
  CHECK(tr.T.dim() == doctest::Approx(1.0));
  CHECK(is_commutative_ssfa(tr.T));
}

TEST_CASE("trivializing algebra of fibonacci") {
  auto tr = build_trivializing_algebra(load_builtin("fibonacci"));
  double phi = 1.618033988749895;
  CHECK(tr.T.dim() == doctest::Approx(1 + phi * phi).epsilon(1e-10));
  CHECK(check_algebra(tr.T).ok);
  CHECK(check_frobenius(tr.T).ok);
  CHECK(check_special(tr.T).ok);
  CHECK(check_symmetric(tr.T).ok);
  CHECK(check_commutative(tr.T).ok);
  CHECK(check_haploid(tr.T).ok);
  CHECK(check_trivial_twist(tr.T).ok);
}

TEST_CASE("trivializing algebra of ising has dim 4 and all flags") {
  auto tr = build_trivializing_algebra(load_builtin("ising"));
  CHECK(tr.T.dim() == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(is_commutative_ssfa(tr.T));
  CHECK(check_haploid(tr.T).ok);
  CHECK(check_simple(tr.T).ok);
}

TEST_CASE("non-modular input is rejected") {
  CHECK_THROWS_WITH_AS(build_trivializing_algebra(load_builtin("z4")),
                       doctest::Contains("NotModular"), error);
}

TEST_CASE("full trivialization of fibonacci") {
  auto rep = verify_trivialization(load_builtin("fibonacci"));
  CAPTURE(rep.detail);
  CHECK(rep.n_simple_modules == 2);
  CHECK(rep.n_local == 1);
  CHECK(rep.ind_decomposition_ok);
  CHECK(rep.quotient_rank == 1);
  CHECK(rep.dim_loc == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.passed);
}

TEST_CASE("full trivialization of z3") {
  auto rep = verify_trivialization(load_builtin("z3"));
  CAPTURE(rep.detail);
  CHECK(rep.n_simple_modules == 3);
  CHECK(rep.n_local == 1);
  CHECK(rep.passed);
}

TEST_CASE("full trivialization of ising") {
  auto rep = verify_trivialization(load_builtin("ising"));
  CAPTURE(rep.detail);
  CHECK(rep.n_simple_modules == 3);
  CHECK(rep.n_local == 1);
  CHECK(rep.ind_decomposition_ok);
  CHECK(rep.quotient_rank == 1);
  CHECK(rep.dim_loc == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.passed);
}

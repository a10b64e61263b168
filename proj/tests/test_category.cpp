#include "doctest.h"

#include "ribcat/catalog.hpp"
#include "ribcat/io.hpp"

using namespace ribcat;

TEST_CASE("catalog categories validate") {
  for (auto key : {"vec", "toric_code", "z3", "fibonacci", "ising"}) {
    CAPTURE(key);
    auto cat = load_builtin(key);
    auto rep = validate(cat);
    CAPTURE(rep.pentagon_residual);
    CAPTURE(rep.hexagon_residual);
    CAPTURE(rep.zigzag_residual);
    CAPTURE(rep.trace_residual);
    CHECK(rep.passed);
    CHECK(rep.pentagon_residual < 1e-9);
    CHECK(rep.hexagon_residual < 1e-9);
  }
}

TEST_CASE("perturbed fibonacci F fails the pentagon") {
  auto fib = load_builtin("fibonacci");
  auto bad = std::make_shared<SkeletalCategory>(*fib);
  bad->F[FKey{1, 1, 1, 1}](0, 0) += 1e-3;
  bad->clear_caches();
  auto rep = validate(bad);
  CHECK(rep.pentagon_residual > 1e-4);
  CHECK_FALSE(rep.passed);
}

TEST_CASE("s-matrix values") {
  auto vec = load_builtin("vec");
  Matrix s = s_matrix(vec);
  CHECK(std::abs(s(0, 0) - Scalar(1)) < 1e-12);

  auto ising = load_builtin("ising");
  Matrix si = s_matrix(ising);
  double r2 = std::sqrt(2.0);
  Matrix expect(3, 3);
  expect << 1, 1, r2, 1, 1, -r2, r2, -r2, 0;
  CHECK(inf_norm(si - expect) < 1e-9);

  auto toric = load_builtin("toric_code");
  Matrix st = s_matrix(toric);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(std::abs(st(i, j)) - 1.0) < 1e-9);
}

TEST_CASE("modularity predicate") {
  CHECK(is_modular(load_builtin("vec")));
  CHECK(is_modular(load_builtin("fibonacci")));
  CHECK(is_modular(load_builtin("ising")));
  CHECK(is_modular(load_builtin("toric_code")));
  CHECK(is_modular(load_builtin("z3")));
  CHECK_FALSE(is_modular(load_builtin("z4")));
  CHECK_FALSE(is_modular(load_builtin("fermion")));
}

TEST_CASE("s squared is Dim times charge conjugation") {
  CHECK(verify_s_squared(load_builtin("vec")) < 1e-9);
  CHECK(verify_s_squared(load_builtin("ising")) < 1e-9);
  CHECK(verify_s_squared(load_builtin("fibonacci")) < 1e-9);
  CHECK(verify_s_squared(load_builtin("toric_code")) < 1e-9);
  auto fib = load_builtin("fibonacci");
  auto g = global_dim_and_charges(fib);
  CHECK(g.dim == doctest::Approx(3.618033988749895).epsilon(1e-9));
}

TEST_CASE("global dim and charges") {
  auto toric = load_builtin("toric_code");
  auto g = global_dim_and_charges(toric);
  CHECK(g.dim == doctest::Approx(4.0));
  CHECK(std::abs(g.p_plus - Scalar(2.0)) < 1e-9);
  CHECK(std::abs(g.p_minus - Scalar(2.0)) < 1e-9);
  auto ising = load_builtin("ising");
  auto gi = global_dim_and_charges(ising);
  CHECK(std::abs(gi.p_plus) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(global_dim_and_charges(load_builtin("z4")), error);
}

TEST_CASE("dual category") {
  auto vec = load_builtin("vec");
  CHECK(dual_category(vec)->rank == 1);

  auto ising = load_builtin("ising");
  auto dd = dual_category(dual_category(ising));
  for (auto& [key, blk] : ising->F) CHECK(inf_norm(dd->f_block(key.i, key.j, key.k, key.l) - blk) < 1e-12);
  for (auto& [key, blk] : ising->R) {
    auto [i, j, k] = key;
    CHECK(inf_norm(dd->r_block(i, j, k) - blk) < 1e-12);
  }

  auto fib = load_builtin("fibonacci");
  auto fibd = dual_category(fib);
  CHECK(validate(fibd).passed);
  CHECK(std::abs(fibd->theta[1] - std::conj(fib->theta[1])) < 1e-12);
  // s-bar_{ij} = s_{i, dual(j)}
  Matrix s = s_matrix(fib), sd = s_matrix(fibd);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(sd(i, j) - s(i, fib->dual_of(j))) < 1e-9);
}

TEST_CASE("deligne product") {
  auto vec = load_builtin("vec");
  auto fib = load_builtin("fibonacci");
  auto vf = deligne_product(vec, fib);
  CHECK(vf->rank == 2);
  CHECK(validate(vf).passed);

  auto ising = load_builtin("ising");
  auto prod = deligne_product(ising, dual_category(ising));
  CHECK(prod->rank == 9);
  auto g = global_dim_and_charges(prod);
  CHECK(g.dim == doctest::Approx(16.0).epsilon(1e-9));

  auto ff = deligne_product(fib, fib);
  CHECK(validate(ff).passed);
  Matrix s = s_matrix(fib), sp = s_matrix(ff);
  Label tt = product_label(*ff, 1, 1);
  CHECK(std::abs(sp(tt, tt) - s(1, 1) * s(1, 1)) < 1e-9);
}

TEST_CASE("category json round trip") {
  auto ising = load_builtin("ising");
  std::string text = save_category_json(*ising);
  auto back = load_category_json(text);
  CHECK(back->rank == 3);
  CHECK(validate(back).passed);
  Matrix s1 = s_matrix(ising), s2 = s_matrix(back);
  CHECK(inf_norm(s1 - s2) < 1e-12);
}

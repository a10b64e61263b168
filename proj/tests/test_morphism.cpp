#include "doctest.h"

#include <random>

#include "ribcat/catalog.hpp"

using namespace ribcat;

namespace {

std::mt19937 rng(20240811);

ObjectSum random_object(const CategoryPtr& cat) {
  std::uniform_int_distribution<int> nlab(1, 2), lab(0, cat->rank - 1), mm(1, 2);
  ObjectSum o(cat);
  int n = nlab(rng);
  for (int i = 0; i < n; ++i) o.mult[lab(rng)] = mm(rng);
  return o;
}

Tuple random_tuple(const CategoryPtr& cat, int maxlen = 2) {
  std::uniform_int_distribution<int> len(1, maxlen);
  Tuple t;
  int n = len(rng);
  for (int i = 0; i < n; ++i) t.push_back(random_object(cat));
  return t;
}

Morphism random_morphism(const CategoryPtr& cat, const Tuple& dom, const Tuple& cod) {
  std::uniform_real_distribution<double> coef(-1, 1);
  Morphism m(cat, dom, cod);
  for (auto& tp : hom_basis(cat, dom, cod)) m.add(tp.dom, tp.cod, Scalar(coef(rng), coef(rng)));
  return m;
}

}  // namespace

TEST_CASE("identity and composition laws") {
  for (auto key : {"ising", "fibonacci", "toric_code"}) {
    auto cat = load_builtin(key);
    for (int it = 0; it < 20; ++it) {
      Tuple x = random_tuple(cat), y = random_tuple(cat), z = random_tuple(cat),
            w = random_tuple(cat);
      Morphism f = random_morphism(cat, x, y);
      Morphism g = random_morphism(cat, y, z);
      Morphism h = random_morphism(cat, z, w);
      CHECK((compose(f, identity(cat, x)) - f).norm_inf() < 1e-10);
      CHECK((compose(identity(cat, y), f) - f).norm_inf() < 1e-10);
      CHECK((compose(h, compose(g, f)) - compose(compose(h, g), f)).norm_inf() < 1e-10);
    }
  }
}

TEST_CASE("tensor is bifunctorial (interchange law)") {
  for (auto key : {"ising", "fibonacci"}) {
    auto cat = load_builtin(key);
    CHECK((tensor(identity(cat, random_tuple(cat)), identity(cat, random_tuple(cat)))).entries.size() > 0);
    for (int it = 0; it < 15; ++it) {
      Tuple x1 = random_tuple(cat), y1 = random_tuple(cat), z1 = random_tuple(cat);
      Tuple x2 = random_tuple(cat), y2 = random_tuple(cat), z2 = random_tuple(cat);
      Morphism f1 = random_morphism(cat, x1, y1), g1 = random_morphism(cat, y1, z1);
      Morphism f2 = random_morphism(cat, x2, y2), g2 = random_morphism(cat, y2, z2);
      Morphism lhs = tensor(compose(g1, f1), compose(g2, f2));
      Morphism rhs = compose(tensor(g1, g2), tensor(f1, f2));
      CHECK((lhs - rhs).norm_inf() < 1e-9);
    }
  }
}

TEST_CASE("tensor with identity preserves entries count sanity") {
  auto cat = load_builtin("ising");
  ObjectSum sigma(cat, 2);
  Morphism id1 = identity(cat, Tuple{sigma});
  Morphism id2 = tensor(id1, id1);
  CHECK((id2 - identity(cat, Tuple{sigma, sigma})).norm_inf() < 1e-12);
}

TEST_CASE("braiding naturality and inverse") {
  for (auto key : {"ising", "fibonacci", "z3"}) {
    auto cat = load_builtin(key);
    for (int it = 0; it < 15; ++it) {
      ObjectSum x = random_object(cat), y = random_object(cat);
      // inverse law in both orders
      Morphism c = braid(x, y, false);
      Morphism cinv = braid(y, x, true);
      CHECK((compose(cinv, c) - identity(cat, Tuple{x, y})).norm_inf() < 1e-10);
      CHECK((compose(c, cinv) - identity(cat, Tuple{y, x})).norm_inf() < 1e-10);
      // naturality: (g (x) f) o c_{X,W} = c_{Y,Z} o (f (x) g)
      ObjectSum z = random_object(cat), w = random_object(cat);
      Morphism f = random_morphism(cat, Tuple{x}, Tuple{y});
      Morphism g = random_morphism(cat, Tuple{w}, Tuple{z});
      Morphism lhs = compose(tensor(g, f), braid(x, w, false));
      Morphism rhs = compose(braid(y, z, false), tensor(f, g));
      CHECK((lhs - rhs).norm_inf() < 1e-9);
    }
  }
}

TEST_CASE("hexagon-compatible braiding of fused strands") {
  // c_{X,Y(x)Z} = (id (x) c_{X,Z}) o (c_{X,Y} (x) id) as tuple morphisms
  for (auto key : {"ising", "fibonacci"}) {
    auto cat = load_builtin(key);
    for (int it = 0; it < 10; ++it) {
      ObjectSum x = random_object(cat), y = random_object(cat), z = random_object(cat);
      Morphism lhs = braid_tuples(Tuple{x}, Tuple{y, z}, false);
      Morphism step1 = tensor(braid(x, y, false), identity(cat, Tuple{z}));
      Morphism step2 = tensor(identity(cat, Tuple{y}), braid(x, z, false));
      CHECK((lhs - compose(step2, step1)).norm_inf() < 1e-9);
    }
  }
}

TEST_CASE("twist functoriality and pair rule") {
  for (auto key : {"ising", "fibonacci", "toric_code"}) {
    auto cat = load_builtin(key);
    for (int it = 0; it < 10; ++it) {
      ObjectSum x = random_object(cat), y = random_object(cat);
      Morphism f = random_morphism(cat, Tuple{x}, Tuple{y});
      Morphism lhs = compose(twist_morphism(cat, Tuple{y}), f);
      Morphism rhs = compose(f, twist_morphism(cat, Tuple{x}));
      CHECK((lhs - rhs).norm_inf() < 1e-9);
      // theta_{X (x) Y} = c_{Y,X} c_{X,Y} (theta_X (x) theta_Y)
      Morphism pair = twist_morphism(cat, Tuple{x, y});
      Morphism cc = compose(braid(y, x, false), braid(x, y, false));
      Morphism thth = tensor(twist_morphism(cat, Tuple{x}), twist_morphism(cat, Tuple{y}));
      CHECK((pair - compose(cc, thth)).norm_inf() < 1e-9);
    }
  }
}

TEST_CASE("trace properties") {
  for (auto key : {"ising", "fibonacci"}) {
    auto cat = load_builtin(key);
    // trace of identity = quantum dimension
    for (int it = 0; it < 6; ++it) {
      ObjectSum x = random_object(cat);
      CHECK(std::abs(trace(identity(cat, Tuple{x})) - Scalar(x.qdim())) < 1e-9);
    }
    // cyclicity
    for (int it = 0; it < 10; ++it) {
      Tuple x = random_tuple(cat), y = random_tuple(cat);
      Morphism f = random_morphism(cat, x, y);
      Morphism g = random_morphism(cat, y, x);
      CHECK(std::abs(trace(compose(g, f)) - trace(compose(f, g))) < 1e-8);
    }
  }
  // trace of twist on sigma
  auto ising = load_builtin("ising");
  ObjectSum sigma(ising, 2);
  Scalar t = trace(twist_morphism(ising, Tuple{sigma}));
  CHECK(std::abs(t - std::sqrt(2.0) * ising->theta[2]) < 1e-9);
  // trace(c o c) = s entry
  auto fib = load_builtin("fibonacci");
  ObjectSum tau(fib, 1);
  Scalar s = trace(compose(braid(tau, tau, false), braid(tau, tau, false)));
  CHECK(std::abs(s - s_formula(*fib, 1, 1)) < 1e-9);
}

TEST_CASE("recoupling path independence on random 4-leaf instances") {
  // tensor(tensor(f,g),h) vs tensor(f,tensor(g,h)) exercises all F-moves
  for (auto key : {"ising", "fibonacci"}) {
    auto cat = load_builtin(key);
    for (int it = 0; it < 8; ++it) {
      ObjectSum x = random_object(cat), y = random_object(cat), z = random_object(cat);
      Morphism f = random_morphism(cat, Tuple{x}, Tuple{x});
      Morphism g = random_morphism(cat, Tuple{y}, Tuple{y});
      Morphism h = random_morphism(cat, Tuple{z}, Tuple{z});
      Morphism lhs = tensor(tensor(f, g), h);
      Morphism rhs = tensor(f, tensor(g, h));
      CHECK((lhs - rhs).norm_inf() < 1e-9);
    }
  }
}

TEST_CASE("image of idempotent") {
  auto cat = load_builtin("ising");
  ObjectSum a(cat);
  a.mult[0] = 1;
  a.mult[1] = 1;  // 1 + psi
  Morphism id = identity(cat, Tuple{a});
  auto split = image_of_idempotent(id);
  CHECK(split.obj == a);
  CHECK((compose(split.e, split.r) - id).norm_inf() < 1e-10);

  Morphism zero = zero_morphism(cat, Tuple{a}, Tuple{a});
  auto zsplit = image_of_idempotent(zero);
  CHECK(zsplit.obj.is_zero());

  // projector onto the label-0 part of 1 + psi
  Morphism p(cat, Tuple{a}, Tuple{a});
  p.add(FusionTree{{1, 0, 0}}, FusionTree{{1, 0, 0}}, 1);
  auto psplit = image_of_idempotent(p);
  CHECK(psplit.obj.mult_of(0) == 1);
  CHECK(psplit.obj.mult_of(1) == 0);
  CHECK((compose(psplit.e, psplit.r) - p).norm_inf() < 1e-10);
  CHECK((compose(psplit.r, psplit.e) - identity(cat, Tuple{psplit.obj})).norm_inf() < 1e-10);
}

TEST_CASE("morphism dump is sorted and stable") {
  auto cat = load_builtin("fibonacci");
  ObjectSum tau(cat, 1);
  Morphism c = braid(tau, tau, false);
  std::string d1 = c.dump();
  CHECK(d1 == braid(tau, tau, false).dump());
  CHECK(d1.find("->") != std::string::npos);
}

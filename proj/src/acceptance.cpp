#include "ribcat/report.hpp"

#include <chrono>
#include <iostream>
#include <random>

#include "json.hpp"
#include "ribcat/catalog.hpp"
#include "ribcat/coset.hpp"
#include "ribcat/quotient.hpp"
#include "ribcat/trivialize.hpp"

namespace ribcat {

std::string report_to_json(const RunReport& rep) {
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = rep.command;
  j["passed"] = rep.all_passed();
  nlohmann::json checks = nlohmann::json::array();
  for (auto& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"residual", c.residual},
                      {"witness", c.witness}});
  j["checks"] = checks;
  return j.dump(1);
}

void print_report(const RunReport& rep) {
  for (auto& c : rep.checks) {
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (c.residual != 0) std::cout << "  (residual " << c.residual << ")";
    if (!c.witness.empty()) std::cout << "  [" << c.witness << "]";
    std::cout << "\n";
  }
}

namespace {

using clock_t_ = std::chrono::steady_clock;

double seconds_since(clock_t_::time_point t0) {
  return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

struct RandomMorphisms {
  std::mt19937 rng{20260810};
  CategoryPtr cat;

  ObjectSum object() {
    std::uniform_int_distribution<int> nlab(1, 2), lab(0, cat->rank - 1), mm(1, 2);
    ObjectSum o(cat);
    int n = nlab(rng);
    for (int i = 0; i < n; ++i) o.mult[lab(rng)] = mm(rng);
    return o;
  }
  Tuple tuple(int maxlen = 2) {
    std::uniform_int_distribution<int> len(1, maxlen);
    Tuple t;
    int n = len(rng);
    for (int i = 0; i < n; ++i) t.push_back(object());
    return t;
  }
  Morphism morphism(const Tuple& dom, const Tuple& cod) {
    std::uniform_real_distribution<double> coef(-1, 1);
    Morphism m(cat, dom, cod);
    for (auto& tp : hom_basis(cat, dom, cod)) m.add(tp.dom, tp.cod, Scalar(coef(rng), coef(rng)));
    return m;
  }
};

}  // namespace

RunReport run_acceptance(const Tolerance& tol, bool verbose) {
  RunReport rep;
  rep.command = "selftest";
  auto line = [&](const std::string& name, bool ok, double res = 0,
                  const std::string& witness = "") {
    rep.add(name, ok, res, witness);
    if (verbose) {
      std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
      if (res != 0) std::cout << "  (residual " << res << ")";
      if (!witness.empty()) std::cout << "  [" << witness << "]";
      std::cout << std::endl;
    }
  };
  auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      line(name, false, 0, e.what());
    }
  };

  const std::vector<std::string> catalog_keys = {"vec", "toric_code", "z3", "fibonacci", "ising"};

  // 1. axiom validation with fault injection and runtime bound
  guarded("1. pentagon/hexagon validation", [&] {
    double worst = 0, worst_time = 0;
    bool ok = true;
    for (auto& key : catalog_keys) {
      auto t0 = clock_t_::now();
      auto cat = load_builtin(key, tol);
      auto vr = validate(cat);
      worst = std::max({worst, vr.pentagon_residual, vr.hexagon_residual});
      worst_time = std::max(worst_time, seconds_since(t0));
      ok = ok && vr.passed && vr.pentagon_residual < 1e-9 && vr.hexagon_residual < 1e-9;
    }
    ok = ok && worst_time < 1.0;
    auto fib = load_builtin("fibonacci", tol);
    auto bad = std::make_shared<SkeletalCategory>(*fib);
    bad->F[FKey{1, 1, 1, 1}](0, 0) += 1e-3;
    bad->clear_caches();
    auto vr = validate(bad);
    ok = ok && vr.pentagon_residual > 1e-4;
    line("1. pentagon/hexagon validation", ok, worst,
         "perturbation residual " + std::to_string(vr.pentagon_residual) + ", slowest " +
             std::to_string(worst_time) + "s");
  });

  // 2. s^2 = Dim * C
  guarded("2. s squared is Dim times conjugation", [&] {
    double worst = 0;
    for (auto& key : catalog_keys) worst = std::max(worst, verify_s_squared(load_builtin(key, tol)));
    bool ok = worst < 1e-9;
    auto toric = load_builtin("toric_code", tol);
    auto ising = load_builtin("ising", tol);
    auto fib = load_builtin("fibonacci", tol);
    ok = ok && std::abs(global_dim_and_charges(toric).dim - 4) < 1e-9;
    ok = ok && std::abs(global_dim_and_charges(ising).dim - 4) < 1e-9;
    double phi = perron_vector((Eigen::MatrixXd(2, 2) << 0, 1, 1, 1).finished()).value;
    ok = ok && std::abs(global_dim_and_charges(fib).dim - (1 + phi * phi)) < 1e-9;
    line("2. s squared is Dim times conjugation", ok, worst);
  });

  // 3. s-matrix double oracle
  guarded("3. s-matrix diagram vs twist/fusion formula", [&] {
    double worst = 0;
    for (auto& key : catalog_keys) {
      auto cat = load_builtin(key, tol);
      Matrix s = s_matrix(cat);  // throws InconsistentData on disagreement
      for (Label i = 0; i < cat->rank; ++i)
        for (Label j = 0; j < cat->rank; ++j)
          worst = std::max(worst, std::abs(s(i, j) - s_formula(*cat, i, j)));
    }
    line("3. s-matrix diagram vs twist/fusion formula", worst < 1e-9, worst);
  });

  // 4. dual category and deligne product
  guarded("4. dual and product s-matrices", [&] {
    double worst = 0;
    for (auto& key : catalog_keys) {
      auto cat = load_builtin(key, tol);
      Matrix s = s_matrix(cat);
      Matrix sd = s_matrix(dual_category(cat));
      for (Label i = 0; i < cat->rank; ++i)
        for (Label j = 0; j < cat->rank; ++j)
          worst = std::max(worst, std::abs(sd(i, j) - s(i, cat->dual_of(j))));
    }
    auto prod = deligne_product(load_builtin("ising", tol), load_builtin("fibonacci", tol));
    Matrix sp = s_matrix(prod);
    Matrix s1 = s_matrix(load_builtin("ising", tol));
    Matrix s2 = s_matrix(load_builtin("fibonacci", tol));
    for (Label i = 0; i < prod->rank; ++i)
      for (Label j = 0; j < prod->rank; ++j) {
        auto [i1, i2] = product_pair(*prod, i);
        auto [j1, j2] = product_pair(*prod, j);
        worst = std::max(worst, std::abs(sp(i, j) - s1(i1, j1) * s2(i2, j2)));
      }
    line("4. dual and product s-matrices", worst < 1e-9, worst);
  });

  // 5. trivialization pipelines
  guarded("5. T_G trivialization (fibonacci, ising)", [&] {
    auto t0 = clock_t_::now();
    auto rf = verify_trivialization(load_builtin("fibonacci", tol));
    double tf = seconds_since(t0);
    t0 = clock_t_::now();
    auto ri = verify_trivialization(load_builtin("ising", tol));
    double ti = seconds_since(t0);
    bool ok = rf.passed && rf.n_simple_modules == 2 && rf.n_local == 1 &&
              rf.quotient_rank == 1 && std::abs(rf.dim_loc - 1) < 1e-9;
    ok = ok && ri.passed && ri.n_simple_modules == 3 && ri.n_local == 1 &&
         ri.quotient_rank == 1 && std::abs(ri.dim_loc - 1) < 1e-9;
    ok = ok && tf < 30 && ti < 30;
    line("5. T_G trivialization (fibonacci, ising)", ok,
         std::max(std::abs(rf.dim_loc - 1), std::abs(ri.dim_loc - 1)),
         "runtimes " + std::to_string(tf) + "s / " + std::to_string(ti) + "s");
  });

  // 6. simple current extension of the toric code
  guarded("6. toric simple-current extension 1+e", [&] {
    auto cat = load_builtin("toric_code", tol);
    auto alg = std::make_shared<FrobeniusAlgebra>(load_builtin_algebra(cat, "simple_current:0.1"));
    auto simples = enumerate_simple_modules(alg);
    int n_local = 0;
    for (auto& s : simples)
      if (is_local(s)) ++n_local;
    QuotientSummary qs = quotient_summary(alg);
    auto g = global_dim_and_charges(cat);
    double worst = std::abs(qs.dim_loc - g.dim / (alg->dim() * alg->dim()));
    // didi: s^A_{M,0} = dim M. / dim A
    for (size_t i = 0; i < qs.dims_A.size(); ++i)
      worst = std::max(worst, std::abs(qs.s_A(i, 0) - Scalar(qs.dims_A[i])));
    // neuir: dim(M (x)_A N) = dim M. dim N. / dim A on all local pairs
    std::vector<AModule> locals;
    for (auto& s : simples)
      if (is_local(s)) locals.push_back(s);
    for (auto& m : locals)
      for (auto& n : locals) {
        TensorOverA t = tensor_over_A(m, n);
        worst = std::max(worst, std::abs(t.mod.dim() - m.dim() * n.dim() / alg->dim()));
      }
    bool ok = simples.size() == 2 && n_local == 1 && std::abs(qs.dim_loc - 1) < 1e-9 &&
              worst < 1e-9;
    line("6. toric simple-current extension 1+e", ok, worst);
  });

  // 7. locality triple criterion on every catalog commutative ssFA
  guarded("7. locality criteria agreement", [&] {
    int modules_checked = 0;
    auto run = [&](const AlgebraPtr& alg) {
      for (auto& s : enumerate_simple_modules(alg)) {
        is_local(s);  // throws CriteriaDisagree on any mismatch
        ++modules_checked;
      }
    };
    auto toric = load_builtin("toric_code", tol);
    run(std::make_shared<FrobeniusAlgebra>(load_builtin_algebra(toric, "simple_current:0.1")));
    run(std::make_shared<FrobeniusAlgebra>(load_builtin_algebra(toric, "simple_current:0.0,1.0")));
    run(std::make_shared<FrobeniusAlgebra>(trivial_algebra(load_builtin("z3", tol))));
    run(std::make_shared<FrobeniusAlgebra>(
        build_trivializing_algebra(load_builtin("fibonacci", tol)).T));
    run(std::make_shared<FrobeniusAlgebra>(
        build_trivializing_algebra(load_builtin("ising", tol)).T));
    line("7. locality criteria agreement", modules_checked > 0, 0,
         std::to_string(modules_checked) + " simple modules, zero disagreements");
  });

  // 8. alpha induction
  guarded("8. alpha-induction and local induction dims", [&] {
    auto ising = load_builtin("ising", tol);
    auto ss = load_builtin_algebra(ising, "dual_object:s");
    auto z = alpha_z_matrix(ss);  // both oracles, throws on disagreement
    bool ok = z == Eigen::MatrixXi::Identity(3, 3);
    CenterResult cl = center(ss, Side::left), cr = center(ss, Side::right);
    ok = ok && cl.C.obj.total_mult() == 1 && cl.C.obj.mult_of(0) == 1;
    ok = ok && cr.C.obj.total_mult() == 1 && cr.C.obj.mult_of(0) == 1;
    for (Label j = 0; j < ising->rank; ++j)
      ok = ok && local_induction_object(ss, ObjectSum(ising, j), Side::left).obj ==
                     ObjectSum(ising, j);
    double worst = 0;
    auto toric = load_builtin("toric_code", tol);
    std::vector<std::pair<CategoryPtr, FrobeniusAlgebra>> commutative = {
        {toric, load_builtin_algebra(toric, "simple_current:0.1")},
        {toric, load_builtin_algebra(toric, "simple_current:0.0,1.0")},
        {toric, trivial_algebra(toric)},
        {ising, trivial_algebra(ising)}};
    auto fibtr = build_trivializing_algebra(load_builtin("fibonacci", tol));
    commutative.emplace_back(fibtr.product, fibtr.T);
    for (auto& [cat, alg] : commutative)
      for (Label u = 0; u < cat->rank; ++u)
        worst = std::max(worst, dim_local_induction_check(alg, ObjectSum(cat, u)));
    ok = ok && worst < 1e-9;
    line("8. alpha-induction and local induction dims", ok, worst);
  });

  // 9. Z multiplicativity
  guarded("9. Z multiplicativity", [&] {
    auto toric = load_builtin("toric_code", tol);
    auto ising = load_builtin("ising", tol);
    int worst = 0;
    worst = std::max(worst,
                     z_multiplicativity_check(load_builtin_algebra(toric, "simple_current:0.1"),
                                              load_builtin_algebra(toric, "simple_current:0.0,1.0")));
    worst = std::max(worst, z_multiplicativity_check(load_builtin_algebra(ising, "dual_object:s"),
                                                     load_builtin_algebra(ising, "dual_object:s")));
    worst = std::max(worst, z_multiplicativity_check(trivial_algebra(ising),
                                                     load_builtin_algebra(ising, "dual_object:s")));
    line("9. Z multiplicativity", worst == 0, worst);
  });

  // 10. thm:equiv comparator incl. a genuinely noncommutative case
  guarded("10. left/right center equivalence", [&] {
    bool ok = true;
    std::string witness;
    auto ising = load_builtin("ising", tol);
    ok = ok && verify_thm_equiv(load_builtin_algebra(ising, "dual_object:s")).match.matched;
    auto toric = load_builtin("toric_code", tol);
    ok = ok && verify_thm_equiv(load_builtin_algebra(toric, "simple_current:0.1")).match.matched;
    auto fib = load_builtin("fibonacci", tol);
    ok = ok && verify_thm_equiv(load_builtin_algebra(fib, "dual_object:t")).match.matched;
    // noncommutative: T (x)+ (tau tau^v x 1) in Fib x Fib~
    auto tr = build_trivializing_algebra(fib);
    auto tt = dual_object_algebra(ObjectSum(tr.product, product_label(*tr.product, 1, 0)));
    auto big = tensor_algebra(tr.T, tt, +1);
    bool comm = check_commutative(big).ok;
    auto er = verify_thm_equiv(big);
    ok = ok && !comm && er.match.matched;
    witness = "noncommutative witness dim " + std::to_string(big.dim());
    // prop:tensor-center object-level check on toric x toric
    auto prod = deligne_product(toric, toric);
    auto a = group_algebra(prod, {product_label(*prod, 1, 0)});
    auto b = group_algebra(prod, {product_label(*prod, 0, 1)});
    auto tc = tensor_center_check(a, b);
    ok = ok && tc.object_match_l && tc.object_match_r && tc.flags_match;
    line("10. left/right center equivalence", ok, 0, witness);
  });

  // 11. iterated extension
  guarded("11. iterated extension on toric x toric", [&] {
    auto toric = load_builtin("toric_code", tol);
    auto prod = deligne_product(toric, toric);
    auto a = group_algebra(prod, {product_label(*prod, 1, 0)});
    auto b = group_algebra(prod, {product_label(*prod, 0, 1)});
    IterExtReport r = verify_iterated_extension(a, b);
    line("11. iterated extension on toric x toric", r.match.matched, 0,
         "inner/outer rank " + std::to_string(r.inner.dims_A.size()));
  });

  // 12. coset closed loops
  guarded("12. coset correspondence closed loops", [&] {
    auto t0 = clock_t_::now();
    auto ising = load_builtin("ising", tol);
    auto qi = dual_category(ising);
    auto qhi = deligne_product(qi, ising);
    CosetReport ri = coset_pipeline(qi, ising, build_trivializing_algebra_in(qhi));
    auto fib = load_builtin("fibonacci", tol);
    auto qf = dual_category(fib);
    auto qhf = deligne_product(qf, fib);
    CosetReport rf = coset_pipeline(qf, fib, build_trivializing_algebra_in(qhf));
    double secs = seconds_since(t0);
    bool ok = ri.passed && ri.g_summary.dims_A.size() == 1 && ri.gamma_trace_residual < 1e-9 &&
              ri.dim_relation_residual < 1e-9 && ri.equivalence.matched;
    ok = ok && rf.passed && rf.equivalence.matched && rf.dim_relation_residual < 1e-9;
    ok = ok && secs < 120;
    line("12. coset correspondence closed loops", ok,
         std::max(ri.dim_relation_residual, rf.dim_relation_residual),
         "runtime " + std::to_string(secs) + "s");
  });

  // 13. randomized morphism-engine property suite
  guarded("13. morphism engine property suite", [&] {
    double worst = 0;
    int per_property = 0;
    for (auto& key : {std::string("ising"), std::string("fibonacci"), std::string("toric_code")}) {
      RandomMorphisms gen;
      gen.cat = load_builtin(key, tol);
      auto cat = gen.cat;
      for (int it = 0; it < 34; ++it) {
        ++per_property;
        Tuple x = gen.tuple(), y = gen.tuple(), z = gen.tuple(), w = gen.tuple();
        Morphism f = gen.morphism(x, y), g = gen.morphism(y, z), h = gen.morphism(z, w);
        worst = std::max(worst,
                         (compose(h, compose(g, f)) - compose(compose(h, g), f)).norm_inf());
        Tuple x2 = gen.tuple(), y2 = gen.tuple(), z2 = gen.tuple();
        Morphism f2 = gen.morphism(x2, y2), g2 = gen.morphism(y2, z2);
        worst = std::max(worst, (tensor(compose(g, f), compose(g2, f2)) -
                                 compose(tensor(g, g2), tensor(f, f2)))
                                    .norm_inf());
        ObjectSum ox = gen.object(), oy = gen.object(), oz = gen.object(), ow = gen.object();
        Morphism ff = gen.morphism(Tuple{ox}, Tuple{oy});
        Morphism gg = gen.morphism(Tuple{ow}, Tuple{oz});
        worst = std::max(worst, (compose(tensor(gg, ff), braid(ox, ow, false)) -
                                 compose(braid(oy, oz, false), tensor(ff, gg)))
                                    .norm_inf());
        worst = std::max(worst, (compose(twist_morphism(cat, Tuple{oy}), ff) -
                                 compose(ff, twist_morphism(cat, Tuple{ox})))
                                    .norm_inf());
        Morphism u = gen.morphism(x, y), v = gen.morphism(y, x);
        worst = std::max(worst, std::abs(trace(compose(v, u)) - trace(compose(u, v))));
        Morphism bz = cup_cap(ox, CupKind::b), dz = cup_cap(ox, CupKind::d);
        Morphism idX = identity(cat, Tuple{ox});
        worst = std::max(worst,
                         (compose(tensor(idX, dz), tensor(bz, idX)) - idX).norm_inf());
      }
    }
    line("13. morphism engine property suite", worst < 1e-9, worst,
         std::to_string(per_property) + " instances per property");
  });

  return rep;
}

}  // namespace ribcat

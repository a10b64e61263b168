#include "ribcat/module.hpp"

#include <numeric>
#include <random>

#include "ribcat/quotient.hpp"

namespace ribcat {

namespace {

// dense matrix of an endomorphism of a 1-tuple over its tree basis
Matrix endo_matrix(const Morphism& f, const std::vector<FusionTree>& trees) {
  std::map<FusionTree, int> index;
  for (size_t i = 0; i < trees.size(); ++i) index[trees[i]] = int(i);
  Matrix m = Matrix::Zero(trees.size(), trees.size());
  for (auto& [k, v] : f.entries) m(index.at(k.cod), index.at(k.dom)) = v;
  return m;
}

Morphism endo_from_matrix(const CategoryPtr& cat, const Tuple& t,
                          const std::vector<FusionTree>& trees, const Matrix& m) {
  Morphism f(cat, t, t);
  for (size_t i = 0; i < trees.size(); ++i)
    for (size_t j = 0; j < trees.size(); ++j) {
      if (trees[i].root() != trees[j].root()) continue;
      if (std::abs(m(i, j)) > 1e-12) f.add(trees[j], trees[i], m(i, j));
    }
  return f;
}

}  // namespace

bool check_module(const AModule& m, double* residual) {
  const auto& a = *m.alg;
  auto cat = a.cat;
  Morphism idA = identity(cat, a.t1());
  Morphism idM = identity(cat, Tuple{m.mdot});
  Morphism r1 = compose(m.rho, tensor(a.m, idM)) - compose(m.rho, tensor(idA, m.rho));
  Morphism r2 = compose(m.rho, tensor(a.eta, idM)) - idM;
  double res = std::max(r1.norm_inf(), r2.norm_inf());
  if (residual) *residual = res;
  return res <= std::min(cat->tol.abs_eps * 100, 0.05);
}

AModule induced_module(const AlgebraPtr& alg, const ObjectSum& u) {
  auto cat = alg->cat;
  ImageSplit flat = flatten_tuple(cat, Tuple{alg->obj, u});
  AModule m;
  m.alg = alg;
  m.mdot = flat.obj;
  Morphism idU = identity(cat, Tuple{u});
  m.rho = compose(flat.r, compose(tensor(alg->m, idU), tensor(identity(cat, alg->t1()), flat.e)));
  return m;
}

AModule regular_module(const AlgebraPtr& alg) {
  AModule m;
  m.alg = alg;
  m.mdot = alg->obj;
  m.rho = alg->m;
  return m;
}

AModule module_direct_sum(const std::vector<AModule>& ms) {
  if (ms.empty()) throw error("ShapeMismatch", "empty direct sum");
  auto alg = ms[0].alg;
  auto cat = alg->cat;
  AModule out;
  out.alg = alg;
  out.mdot = ObjectSum(cat);
  std::vector<std::map<Label, int>> offsets(ms.size());
  for (size_t i = 0; i < ms.size(); ++i) {
    for (auto& [l, mm] : ms[i].mdot.mult) {
      offsets[i][l] = out.mdot.mult_of(l);
      out.mdot.mult[l] += mm;
    }
  }
  out.rho = Morphism(cat, Tuple{alg->obj, out.mdot}, Tuple{out.mdot});
  for (size_t i = 0; i < ms.size(); ++i) {
    for (auto& [k, v] : ms[i].rho.entries) {
      FusionTree td = k.dom, tc = k.cod;
      td.d[2 + 2 * 1] += offsets[i].at(td.leaf_label(1));
      tc.d[2] += offsets[i].at(tc.leaf_label(0));
      out.rho.add(td, tc, v);
    }
  }
  return out;
}

std::vector<Morphism> hom_module(const AModule& m1, const AModule& m2) {
  const auto& a = *m1.alg;
  auto cat = a.cat;
  Morphism idA = identity(cat, a.t1());
  auto cond = [&](const Morphism& f) {
    return compose(f, m1.rho) - compose(m2.rho, tensor(idA, f));
  };
  return solve_morphism_space(cat, Tuple{m1.mdot}, Tuple{m2.mdot}, {cond});
}

int hom_module_dim(const AModule& m1, const AModule& m2) { return int(hom_module(m1, m2).size()); }

ModuleRetract module_from_idempotent(const AModule& m, const Morphism& p) {
  auto cat = m.alg->cat;
  ImageSplit split = image_of_idempotent(p);
  ModuleRetract out;
  out.mod.alg = m.alg;
  out.mod.mdot = split.obj;
  out.e = split.e;
  out.r = split.r;
  out.mod.rho =
      compose(split.r, compose(m.rho, tensor(identity(cat, m.alg->t1()), split.e)));
  return out;
}

std::vector<AModule> enumerate_simple_modules(const AlgebraPtr& alg) {
  auto cat = alg->cat;
  std::vector<AModule> simples;
  auto is_new = [&](const AModule& cand) {
    for (auto& s : simples)
      if (hom_module_dim(cand, s) > 0) return false;
    return true;
  };
  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);

  for (Label i = 0; i < cat->rank; ++i) {
    AModule ind = induced_module(alg, ObjectSum(cat, i));
    if (ind.mdot.is_zero()) continue;
    auto endo = hom_module(ind, ind);
    // reciprocity: dim End_A(Ind(U_i)) = dim Hom(U_i, A (x) U_i)
    int expect = ind.mdot.mult_of(i);
    if (int(endo.size()) != expect)
      throw error("ReciprocityViolation",
                  "dim End_A(Ind(U_" + std::to_string(i) + ")) = " + std::to_string(endo.size()) +
                      " but reciprocity predicts " + std::to_string(expect));
    std::vector<AModule> stack{ind};
    std::vector<std::vector<Morphism>> endos{endo};
    while (!stack.empty()) {
      AModule cur = std::move(stack.back());
      stack.pop_back();
      auto ends = std::move(endos.back());
      endos.pop_back();
      if (ends.size() == 1) {
        cur.simple_cache = true;
        if (is_new(cur)) simples.push_back(std::move(cur));
        continue;
      }
      auto trees = enumerate_trees(cat, Tuple{cur.mdot});
      Matrix t = Matrix::Zero(trees.size(), trees.size());
      for (auto& e : ends) t += Scalar(coef(rng), coef(rng)) * endo_matrix(e, trees);
      Eigen::ComplexEigenSolver<Matrix> es(t);
      std::vector<Scalar> reps;
      for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        Scalar ev = es.eigenvalues()(k);
        bool found = false;
        for (auto& r : reps)
          if (std::abs(r - ev) < 1e-6) found = true;
        if (!found) reps.push_back(ev);
      }
      for (auto& lam : reps) {
        Matrix proj = Matrix::Identity(trees.size(), trees.size());
        for (auto& mu : reps) {
          if (mu == lam) continue;
          proj = proj * (t - mu * Matrix::Identity(trees.size(), trees.size())) / (lam - mu);
        }
        Morphism p = endo_from_matrix(cat, Tuple{cur.mdot}, trees, proj);
        ModuleRetract piece = module_from_idempotent(cur, p);
        if (piece.mod.mdot.is_zero()) continue;
        auto piece_endo = hom_module(piece.mod, piece.mod);
        stack.push_back(std::move(piece.mod));
        endos.push_back(std::move(piece_endo));
      }
    }
  }
  return simples;
}

std::optional<Scalar> twist_scalar(const AModule& m) {
  auto cat = m.alg->cat;
  std::optional<Scalar> val;
  for (auto& [l, mm] : m.mdot.mult) {
    if (!val) {
      val = cat->theta[l];
    } else if (!approx_eq(*val, cat->theta[l], cat->tol)) {
      return std::nullopt;
    }
  }
  return val;
}

bool is_local(const AModule& m) {
  if (m.local_cache) return *m.local_cache;
  const auto& a = *m.alg;
  auto cat = a.cat;
  double tol = std::min(cat->tol.abs_eps * 100, 0.05);

  Morphism pa = local_induction_idempotent(a, m.mdot, Side::left);
  double res_a = (compose(m.rho, pa) - m.rho).norm_inf();
  bool crit_a = res_a <= tol;

  Morphism mono = compose(braid(m.mdot, a.obj, false), braid(a.obj, m.mdot, false));
  double res_b = (compose(m.rho, mono) - m.rho).norm_inf();
  bool crit_b = res_b <= tol;

  if (crit_a != crit_b)
    throw error("CriteriaDisagree", "locality criteria (a) and (b) disagree: residuals " +
                                        std::to_string(res_a) + " vs " + std::to_string(res_b));

  bool simple = m.simple_cache ? *m.simple_cache : (hom_module_dim(m, m) == 1);
  m.simple_cache = simple;
  if (simple && std::abs(m.dim()) > cat->tol.abs_eps) {
    bool crit_c = twist_scalar(m).has_value();
    if (crit_c != crit_b)
      throw error("CriteriaDisagree", "twist criterion disagrees with the braiding criterion");
  }
  m.local_cache = crit_b;
  return crit_b;
}

TensorOverA tensor_over_A(const AModule& m1, const AModule& m2) {
  const auto& a = *m1.alg;
  auto cat = a.cat;
  if (!(m1.alg->obj == m2.alg->obj))
    throw error("ShapeMismatch", "modules over different algebras");
  Morphism de = compose(a.delta, a.eta);
  Morphism idN = identity(cat, Tuple{m2.mdot});
  Morphism idM = identity(cat, Tuple{m1.mdot});
  Morphism step1 = tensor(idM, tensor(de, idN));
  Morphism step2 = tensor(braid(m1.mdot, a.obj, false),
                          identity(cat, Tuple{a.obj, m2.mdot}));
  Morphism p = compose(tensor(m1.rho, m2.rho), compose(step2, step1));
  double idem_res = (compose(p, p) - p).norm_inf();
  if (idem_res > cat->tol.abs_eps * 100)
    throw error("NotLocal", "P_{M(x)N} is not idempotent (modules not local?), residual " +
                                std::to_string(idem_res));
  ImageSplit split = image_of_idempotent(p);
  TensorOverA out;
  out.mod.alg = m1.alg;
  out.mod.mdot = split.obj;
  out.e = split.e;
  out.r = split.r;
  out.mod.rho = compose(split.r, compose(tensor(m1.rho, idN),
                                         tensor(identity(cat, a.t1()), split.e)));
  return out;
}

Morphism quotient_braiding(const TensorOverA& mn, const TensorOverA& nm, const AModule& m,
                           const AModule& n) {
  return compose(nm.r, compose(braid(m.mdot, n.mdot, false), mn.e));
}

namespace {

int find_unit_index(const AlgebraPtr& alg, const std::vector<AModule>& simples) {
  AModule reg = regular_module(alg);
  for (size_t i = 0; i < simples.size(); ++i)
    if (hom_module_dim(simples[i], reg) > 0) return int(i);
  throw error("Internal", "regular module not found among simple local modules");
}

}  // namespace

QuotientSummary quotient_summary(const AlgebraPtr& alg) {
  const auto& a = *alg;
  auto cat = a.cat;
  if (!is_commutative_ssfa(a))
    throw error("PreconditionFailed", "quotient_summary needs a commutative ssFA");
  if (!check_haploid(a).ok)
    throw error("PreconditionFailed", "quotient_summary needs a haploid algebra");

  QuotientSummary out;
  auto all = enumerate_simple_modules(alg);
  for (auto& s : all)
    if (is_local(s)) out.simples.push_back(s);

  int unit = find_unit_index(alg, out.simples);
  std::swap(out.simples[0], out.simples[unit]);
  std::sort(out.simples.begin() + 1, out.simples.end(), [&](const AModule& x, const AModule& y) {
    double dx = x.dim(), dy = y.dim();
    if (std::abs(dx - dy) > 1e-9) return dx < dy;
    return std::arg(*twist_scalar(x)) < std::arg(*twist_scalar(y)) - 1e-12;
  });

  const int n = int(out.simples.size());
  const double dimA = a.dim();
  for (auto& s : out.simples) {
    out.dims_A.push_back(s.dim() / dimA);
    out.twists_A.push_back(*twist_scalar(s));
  }

  out.fusion.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
  std::vector<std::vector<TensorOverA>> prods(n);
  for (int i = 0; i < n; ++i) {
    prods[i].reserve(n);
    for (int j = 0; j < n; ++j) {
      TensorOverA t = tensor_over_A(out.simples[i], out.simples[j]);
      double total = 0;
      for (int k = 0; k < n; ++k) {
        int mult = hom_module_dim(out.simples[k], t.mod);
        out.fusion[i][j][k] = mult;
        total += mult * out.simples[k].dim();
      }
      if (std::abs(total - t.mod.dim()) > 1e-6)
        throw error("OracleDisagreement", "quotient fusion decomposition incomplete");
      prods[i].push_back(std::move(t));
    }
  }

  out.s_A = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const AModule& M = out.simples[i];
      const AModule& N = out.simples[j];
      Morphism mono = compose(braid(N.mdot, M.mdot, false), braid(M.mdot, N.mdot, false));
      Morphism p = compose(prods[i][j].e, prods[i][j].r);
      Scalar diag = trace(compose(mono, p)) / dimA;
      Scalar formula = 0;
      for (int k = 0; k < n; ++k)
        formula += double(out.fusion[i][j][k]) * out.twists_A[k] /
                   (out.twists_A[i] * out.twists_A[j]) * out.dims_A[k];
      if (!approx_eq(diag, formula, cat->tol))
        throw error("OracleDisagreement",
                    "s^A diagram and twist/fusion formula disagree at (" + std::to_string(i) +
                        "," + std::to_string(j) + ")");
      out.s_A(i, j) = diag;
    }

  out.p_plus_loc = out.p_minus_loc = 0;
  for (int i = 0; i < n; ++i) {
    double d2 = out.dims_A[i] * out.dims_A[i];
    out.dim_loc += d2;
    out.p_plus_loc += out.twists_A[i] * d2;
    out.p_minus_loc += d2 / out.twists_A[i];
  }

  bool ambient_modular = false;
  try {
    ambient_modular = is_modular(cat);
  } catch (const error&) {
    ambient_modular = false;
  }
  if (ambient_modular && check_simple(a).ok) {
    out.modular_claimed = true;
    double det = std::abs(Scalar(out.s_A.determinant()));
    bool det_ok = det > cat->tol.abs_eps;
    int transparent = 0;
    for (int k = 0; k < n; ++k) {
      bool trans = true;
      for (int r = 0; r < n && trans; ++r)
        for (int s = 0; s < n && trans; ++s)
          if (out.fusion[r][k][s] > 0 &&
              !approx_eq(out.twists_A[s], out.twists_A[k] * out.twists_A[r], cat->tol))
            trans = false;
      if (trans) ++transparent;
    }
    bool twist_ok = (transparent == 1);
    if (det_ok != twist_ok)
      throw error("CriteriaDisagree", "quotient modularity criteria disagree");
    out.modular = det_ok;
  }
  return out;
}

namespace {

bool fingerprint_eq(const QuotientSummary& a, int i, const QuotientSummary& b, int j,
                    const Tolerance& tol) {
  return std::abs(a.dims_A[i] - b.dims_A[j]) < 1e-7 &&
         approx_eq(a.twists_A[i], b.twists_A[j], tol);
}

bool try_assign(const QuotientSummary& a, const QuotientSummary& b, const Tolerance& tol,
                std::vector<int>& perm, std::vector<bool>& used, size_t pos) {
  const int n = int(perm.size());
  if (pos == size_t(n)) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!approx_eq(a.s_A(i, j), b.s_A(perm[i], perm[j]), tol)) return false;
        for (int k = 0; k < n; ++k)
          if (a.fusion[i][j][k] != b.fusion[perm[i]][perm[j]][perm[k]]) return false;
      }
    return true;
  }
  for (int j = 0; j < n; ++j) {
    if (used[j]) continue;
    if (!fingerprint_eq(a, int(pos), b, j, tol)) continue;
    if (pos == 0 && j != 0) continue;
    perm[pos] = j;
    used[j] = true;
    if (try_assign(a, b, tol, perm, used, pos + 1)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

SummaryMatch match_summaries(const QuotientSummary& a, const QuotientSummary& b,
                             const Tolerance& tol) {
  SummaryMatch out;
  if (a.dims_A.size() != b.dims_A.size()) {
    out.detail = "rank mismatch " + std::to_string(a.dims_A.size()) + " vs " +
                 std::to_string(b.dims_A.size());
    return out;
  }
  const int n = int(a.dims_A.size());
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  if (try_assign(a, b, tol, perm, used, 0)) {
    out.matched = true;
    out.permutation = perm;
  } else {
    out.detail = "no permutation matches counts/dims/twists/fusion/s";
  }
  return out;
}

EquivReport verify_thm_equiv(const FrobeniusAlgebra& a) {
  if (!is_ssfa(a)) throw error("PreconditionFailed", "verify_thm_equiv needs an ssFA");
  CenterResult cl = center(a, Side::left);
  CenterResult cr = center(a, Side::right);
  if (!check_special(cl.C).ok || !check_special(cr.C).ok)
    throw error("PreconditionFailed", "centers must be special");
  EquivReport rep;
  rep.left = quotient_summary(std::make_shared<FrobeniusAlgebra>(cl.C));
  rep.right = quotient_summary(std::make_shared<FrobeniusAlgebra>(cr.C));
  rep.match = match_summaries(rep.left, rep.right, a.cat->tol);
  return rep;
}

AModule transport_local_module(const AModule& m, const FrobeniusAlgebra& a) {
  auto cat = a.cat;
  CenterResult cl = center(a, Side::left);
  CenterResult cr = center(a, Side::right);
  if (!(m.alg->obj == cl.C.obj))
    throw error("ShapeMismatch", "module is not over C_l(A)");
  Morphism de = compose(cl.C.delta, cl.C.eta);
  Morphism idA = identity(cat, a.t1());
  Morphism idM = identity(cat, Tuple{m.mdot});
  Morphism act_a = compose(a.m, tensor(idA, cl.e));
  Morphism pi = compose(tensor(act_a, m.rho), tensor(idA, tensor(de, idM)));
  Morphism pr = local_induction_idempotent(a, m.mdot, Side::right);
  double comm = (compose(pr, pi) - compose(pi, pr)).norm_inf();
  if (comm > cat->tol.abs_eps * 100)
    throw error("Internal",
                "transport idempotents do not commute, residual " + std::to_string(comm));
  Morphism q = compose(pr, pi);
  double idem = (compose(q, q) - q).norm_inf();
  if (idem > cat->tol.abs_eps * 100)
    throw error("Internal", "transport morphism is not idempotent");
  ImageSplit split = image_of_idempotent(q);
  AModule out;
  out.alg = std::make_shared<FrobeniusAlgebra>(cr.C);
  out.mdot = split.obj;
  Morphism act_r = compose(a.m, tensor(cr.e, idA));
  out.rho = compose(split.r, compose(tensor(act_r, idM),
                                     tensor(identity(cat, Tuple{cr.C.obj}), split.e)));
  return out;
}

QuotientSummary category_as_summary(const CategoryPtr& cat) {
  QuotientSummary out;
  auto alg = std::make_shared<FrobeniusAlgebra>(trivial_algebra(cat));
  const int n = cat->rank;
  for (Label i = 0; i < n; ++i) {
    out.simples.push_back(induced_module(alg, ObjectSum(cat, i)));
    out.dims_A.push_back(cat->dims[i]);
    out.twists_A.push_back(cat->theta[i]);
  }
  out.fusion.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
  for (Label i = 0; i < n; ++i)
    for (Label j = 0; j < n; ++j)
      for (Label k = 0; k < n; ++k) out.fusion[i][j][k] = cat->n(i, j, k);
  out.s_A = s_matrix(cat);
  out.p_plus_loc = out.p_minus_loc = 0;
  for (Label i = 0; i < n; ++i) {
    double d2 = cat->dims[i] * cat->dims[i];
    out.dim_loc += d2;
    out.p_plus_loc += cat->theta[i] * d2;
    out.p_minus_loc += d2 / cat->theta[i];
  }
  try {
    out.modular = is_modular(cat);
    out.modular_claimed = true;
  } catch (const error&) {
    out.modular_claimed = false;
  }
  return out;
}

IterExtReport verify_iterated_extension(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b) {
  if (!is_commutative_ssfa(a) || !check_simple(a).ok)
    throw error("PreconditionFailed", "verify_iterated_extension needs simple commutative ssFA A");
  if (!is_commutative_ssfa(b))
    throw error("PreconditionFailed", "verify_iterated_extension needs commutative ssFA B");
  LiftedAlgebra lifted = lift_algebra_E_full(a, b, Side::left);
  if (!check_special(lifted.alg).ok)
    throw error("PreconditionFailed", "E_A(B) must be special");

  IterExtReport rep;
  rep.outer = quotient_summary(std::make_shared<FrobeniusAlgebra>(lifted.alg));

  auto ap = std::make_shared<FrobeniusAlgebra>(a);
  QuotientAlgebra qa = lift_to_quotient(ap, lifted.alg, lifted.li);
  rep.inner = q_quotient_summary(qa);
  rep.match = match_summaries(rep.inner, rep.outer, a.cat->tol);
  return rep;
}

}  // namespace ribcat

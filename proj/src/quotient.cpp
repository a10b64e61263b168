#include "ribcat/quotient.hpp"

#include <random>

namespace ribcat {

Morphism QuotientAlgebra::m_ambient() const { return compose(m, sq.r); }

QuotientAlgebra lift_to_quotient(const AlgebraPtr& a, const FrobeniusAlgebra& e_ab,
                                 const LocalInduction& li) {
  auto cat = a->cat;
  QuotientAlgebra qa;
  qa.base = a;
  qa.carrier.alg = a;
  qa.carrier.mdot = e_ab.obj;
  Morphism idA = identity(cat, a->t1());
  ObjectSum bobj = li.e.cod[1];
  // module action of A on E through the embedding into (A, B)
  qa.carrier.rho = compose(li.r, compose(tensor(a->m, identity(cat, Tuple{bobj})),
                                         tensor(idA, li.e)));
  double res = 0;
  if (!check_module(qa.carrier, &res))
    throw error("Internal", "lifted carrier is not an A-module, residual " + std::to_string(res));
  if (!is_local(qa.carrier))
    throw error("PreconditionFailed", "E_A(B) is not a local A-module");

  qa.sq = tensor_over_A(qa.carrier, qa.carrier);
  qa.m = compose(e_ab.m, qa.sq.e);
  qa.eta = compose(qa.carrier.rho, tensor(idA, e_ab.eta));
  qa.delta = compose(qa.sq.r, e_ab.delta);
  Morphism de = compose(a->delta, a->eta);
  Morphism idD = identity(cat, Tuple{e_ab.obj});
  qa.eps = compose(tensor(idA, e_ab.eps),
                   compose(tensor(idA, qa.carrier.rho), tensor(de, idD)));
  return qa;
}

namespace {

Morphism pair_idempotent(const TensorOverA& t) { return compose(t.e, t.r); }

}  // namespace

bool check_qmodule(const QModule& m, double* residual) {
  const auto& qa = *m.qa;
  auto a = qa.base;
  auto cat = a->cat;
  Morphism idD = identity(cat, Tuple{qa.carrier.mdot});
  Morphism idM = identity(cat, Tuple{m.mod.mdot});
  Morphism m_amb = qa.m_ambient();
  TensorOverA bm = tensor_over_A(qa.carrier, m.mod);
  Morphism p_dm = pair_idempotent(bm);
  Morphism p3 = compose(tensor(pair_idempotent(qa.sq), idM), tensor(idD, p_dm));
  Morphism assoc = compose(m.rho_hat, tensor(m_amb, idM)) -
                   compose(m.rho_hat, tensor(idD, m.rho_hat));
  double res = compose(assoc, p3).norm_inf();
  // unit law through the canonical iso A (x)_A M = M
  Morphism pam;
  {
    AModule reg = regular_module(a);
    TensorOverA am = tensor_over_A(reg, m.mod);
    pam = pair_idempotent(am);
  }
  Morphism unit = compose(m.rho_hat, compose(tensor(qa.eta, idM),
                                             compose(pam, tensor(a->eta, idM)))) -
                  idM;
  res = std::max(res, unit.norm_inf());
  if (residual) *residual = res;
  return res <= cat->tol.abs_eps * 100;
}

QModule q_induced_module(const QuotientAlgebra& qa, const AModule& m) {
  auto cat = qa.base->cat;
  TensorOverA bm = tensor_over_A(qa.carrier, m);
  QModule out;
  out.qa = &qa;
  out.mod = bm.mod;
  Morphism idD = identity(cat, Tuple{qa.carrier.mdot});
  Morphism idM = identity(cat, Tuple{m.mdot});
  out.rho_hat = compose(bm.r, compose(tensor(qa.m_ambient(), idM), tensor(idD, bm.e)));
  return out;
}

QModule q_regular_module(const QuotientAlgebra& qa) {
  QModule out;
  out.qa = &qa;
  out.mod = qa.carrier;
  out.rho_hat = qa.m_ambient();
  return out;
}

std::vector<Morphism> q_hom_module(const QModule& m1, const QModule& m2) {
  const auto& qa = *m1.qa;
  auto a = qa.base;
  auto cat = a->cat;
  Morphism idA = identity(cat, a->t1());
  Morphism idD = identity(cat, Tuple{qa.carrier.mdot});
  Morphism p1 = pair_idempotent(tensor_over_A(qa.carrier, m1.mod));
  auto cond_a = [&](const Morphism& f) {
    return compose(f, m1.mod.rho) - compose(m2.mod.rho, tensor(idA, f));
  };
  auto cond_q = [&](const Morphism& f) {
    Morphism diff = compose(f, m1.rho_hat) - compose(m2.rho_hat, tensor(idD, f));
    return compose(diff, p1);
  };
  return solve_morphism_space(cat, Tuple{m1.mod.mdot}, Tuple{m2.mod.mdot}, {cond_a, cond_q});
}

int q_hom_module_dim(const QModule& m1, const QModule& m2) {
  return int(q_hom_module(m1, m2).size());
}

namespace {

QModule q_module_from_idempotent(const QModule& m, const Morphism& p) {
  const auto& qa = *m.qa;
  auto cat = qa.base->cat;
  ModuleRetract mr = module_from_idempotent(m.mod, p);
  QModule out;
  out.qa = m.qa;
  out.mod = mr.mod;
  Morphism idD = identity(cat, Tuple{qa.carrier.mdot});
  out.rho_hat = compose(mr.r, compose(m.rho_hat, tensor(idD, mr.e)));
  return out;
}

Matrix endo_matrix_q(const Morphism& f, const std::vector<FusionTree>& trees) {
  std::map<FusionTree, int> index;
  for (size_t i = 0; i < trees.size(); ++i) index[trees[i]] = int(i);
  Matrix m = Matrix::Zero(trees.size(), trees.size());
  for (auto& [k, v] : f.entries) m(index.at(k.cod), index.at(k.dom)) = v;
  return m;
}

}  // namespace

std::vector<QModule> q_enumerate_simple_modules(const QuotientAlgebra& qa) {
  auto a = qa.base;
  auto cat = a->cat;
  std::vector<QModule> simples;
  auto is_new = [&](const QModule& cand) {
    for (auto& s : simples)
      if (q_hom_module_dim(cand, s) > 0) return false;
    return true;
  };
  std::mt19937 rng(0xbee5);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);

  auto base_simples = enumerate_simple_modules(a);
  for (auto& mk : base_simples) {
    if (!is_local(mk)) continue;
    QModule ind = q_induced_module(qa, mk);
    if (ind.mod.mdot.is_zero()) continue;
    std::vector<QModule> stack{ind};
    while (!stack.empty()) {
      QModule cur = std::move(stack.back());
      stack.pop_back();
      auto ends = q_hom_module(cur, cur);
      if (ends.size() == 1) {
        cur.simple_cache = true;
        if (is_new(cur)) simples.push_back(std::move(cur));
        continue;
      }
      auto trees = enumerate_trees(cat, Tuple{cur.mod.mdot});
      Matrix t = Matrix::Zero(trees.size(), trees.size());
      for (auto& e : ends) t += Scalar(coef(rng), coef(rng)) * endo_matrix_q(e, trees);
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
        Morphism p(cat, Tuple{cur.mod.mdot}, Tuple{cur.mod.mdot});
        for (size_t i = 0; i < trees.size(); ++i)
          for (size_t j = 0; j < trees.size(); ++j) {
            if (trees[i].root() != trees[j].root()) continue;
            if (std::abs(proj(i, j)) > 1e-12) p.add(trees[j], trees[i], proj(i, j));
          }
        QModule piece = q_module_from_idempotent(cur, p);
        if (piece.mod.mdot.is_zero()) continue;
        stack.push_back(std::move(piece));
      }
    }
  }
  return simples;
}

bool q_is_local(const QModule& m) {
  if (m.local_cache) return *m.local_cache;
  const auto& qa = *m.qa;
  auto cat = qa.base->cat;
  double tol = std::min(cat->tol.abs_eps * 100, 0.05);
  Morphism p = pair_idempotent(tensor_over_A(qa.carrier, m.mod));
  Morphism mono = compose(braid(m.mod.mdot, qa.carrier.mdot, false),
                          braid(qa.carrier.mdot, m.mod.mdot, false));
  double res_b = compose(compose(m.rho_hat, mono) - m.rho_hat, p).norm_inf();
  bool crit_b = res_b <= tol;
  bool simple = m.simple_cache ? *m.simple_cache : (q_hom_module_dim(m, m) == 1);
  m.simple_cache = simple;
  if (simple && std::abs(m.mod.dim()) > cat->tol.abs_eps) {
    bool crit_c = twist_scalar(m.mod).has_value();
    if (crit_c != crit_b)
      throw error("CriteriaDisagree",
                  "double-quotient twist and braiding locality criteria disagree");
  }
  m.local_cache = crit_b;
  return crit_b;
}

QTensor q_tensor_over(const QModule& m1, const QModule& m2) {
  const auto& qa = *m1.qa;
  auto cat = qa.base->cat;
  TensorOverA pair = tensor_over_A(m1.mod, m2.mod);
  Morphism p_pair = pair_idempotent(pair);
  // B~ balancing idempotent, with the middle element e_sq o Delta~ o eta~ o eta_A
  Morphism mid = compose(qa.sq.e, compose(qa.delta, compose(qa.eta, qa.base->eta)));
  Morphism idM1 = identity(cat, Tuple{m1.mod.mdot});
  Morphism idM2 = identity(cat, Tuple{m2.mod.mdot});
  Morphism idD = identity(cat, Tuple{qa.carrier.mdot});
  Morphism step1 = tensor(idM1, tensor(mid, idM2));
  Morphism step2 = tensor(braid(m1.mod.mdot, qa.carrier.mdot, false),
                          tensor(idD, idM2));
  Morphism pq = compose(tensor(m1.rho_hat, m2.rho_hat), compose(step2, step1));
  Morphism ptot = compose(pq, p_pair);
  double comm = (compose(pq, p_pair) - compose(p_pair, pq)).norm_inf();
  if (comm > cat->tol.abs_eps * 100)
    throw error("Internal", "B~ balancing does not commute with the A balancing");
  double idem = (compose(ptot, ptot) - ptot).norm_inf();
  if (idem > cat->tol.abs_eps * 100)
    throw error("NotLocal", "double-quotient tensor idempotent fails, residual " +
                                std::to_string(idem));
  ImageSplit split = image_of_idempotent(ptot);
  QTensor out;
  out.e = split.e;
  out.r = split.r;
  out.mod.qa = m1.qa;
  out.mod.mod.alg = qa.base;
  out.mod.mod.mdot = split.obj;
  Morphism idA = identity(cat, qa.base->t1());
  out.mod.mod.rho = compose(split.r, compose(tensor(m1.mod.rho, idM2),
                                             tensor(idA, split.e)));
  out.mod.rho_hat = compose(split.r, compose(tensor(m1.rho_hat, idM2),
                                             tensor(idD, split.e)));
  return out;
}

QuotientSummary q_quotient_summary(const QuotientAlgebra& qa) {
  auto cat = qa.base->cat;
  QuotientSummary out;
  auto all = q_enumerate_simple_modules(qa);
  std::vector<QModule> locs;
  for (auto& s : all)
    if (q_is_local(s)) locs.push_back(s);

  QModule reg = q_regular_module(qa);
  int unit = -1;
  for (size_t i = 0; i < locs.size(); ++i)
    if (q_hom_module_dim(locs[i], reg) > 0) unit = int(i);
  if (unit < 0) throw error("Internal", "regular module missing from double quotient");
  std::swap(locs[0], locs[unit]);
  std::sort(locs.begin() + 1, locs.end(), [&](const QModule& x, const QModule& y) {
    double dx = x.mod.dim(), dy = y.mod.dim();
    if (std::abs(dx - dy) > 1e-9) return dx < dy;
    return std::arg(*twist_scalar(x.mod)) < std::arg(*twist_scalar(y.mod)) - 1e-12;
  });

  const int n = int(locs.size());
  const double dimD = qa.carrier.dim();
  for (auto& s : locs) {
    out.simples.push_back(s.mod);
    out.dims_A.push_back(s.mod.dim() / dimD);
    out.twists_A.push_back(*twist_scalar(s.mod));
  }

  out.fusion.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
  std::vector<std::vector<QTensor>> prods(n);
  for (int i = 0; i < n; ++i) {
    prods[i].reserve(n);
    for (int j = 0; j < n; ++j) {
      QTensor t = q_tensor_over(locs[i], locs[j]);
      double total = 0;
      for (int k = 0; k < n; ++k) {
        int mult = q_hom_module_dim(locs[k], t.mod);
        out.fusion[i][j][k] = mult;
        total += mult * locs[k].mod.dim();
      }
      if (std::abs(total - t.mod.mod.dim()) > 1e-6)
        throw error("OracleDisagreement", "double-quotient fusion decomposition incomplete");
      prods[i].push_back(std::move(t));
    }
  }

  out.s_A = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const AModule& M = locs[i].mod;
      const AModule& N = locs[j].mod;
      Morphism mono = compose(braid(N.mdot, M.mdot, false), braid(M.mdot, N.mdot, false));
      Morphism p = compose(prods[i][j].e, prods[i][j].r);
      Scalar diag = trace(compose(mono, p)) / dimD;
      Scalar formula = 0;
      for (int k = 0; k < n; ++k)
        formula += double(out.fusion[i][j][k]) * out.twists_A[k] /
                   (out.twists_A[i] * out.twists_A[j]) * out.dims_A[k];
      if (!approx_eq(diag, formula, cat->tol))
        throw error("OracleDisagreement", "double-quotient s-matrix oracles disagree at (" +
                                              std::to_string(i) + "," + std::to_string(j) + ")");
      out.s_A(i, j) = diag;
    }

  out.p_plus_loc = out.p_minus_loc = 0;
  for (int i = 0; i < n; ++i) {
    double d2 = out.dims_A[i] * out.dims_A[i];
    out.dim_loc += d2;
    out.p_plus_loc += out.twists_A[i] * d2;
    out.p_minus_loc += d2 / out.twists_A[i];
  }

  // modularity of the double quotient: determinant + twist criterion
  bool ambient_modular = false;
  try {
    ambient_modular = is_modular(cat);
  } catch (const error&) {
  }
  if (ambient_modular && check_simple(*qa.base).ok) {
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
    if (det_ok != (transparent == 1))
      throw error("CriteriaDisagree", "double-quotient modularity criteria disagree");
    out.modular = det_ok;
  }
  return out;
}

}  // namespace ribcat

#include "ribcat/trivialize.hpp"

namespace ribcat {

FrobeniusAlgebra build_trivializing_algebra_in(const CategoryPtr& product) {
  const auto& prod = *product;
  if (!prod.factor_rank2 || prod.rank != prod.factor_rank2 * prod.factor_rank2)
    throw error("IncompatibleKeys",
                "T_G needs a product category of a category with its dual");
  const int r = prod.factor_rank2;
  FrobeniusAlgebra t;
  t.cat = product;
  t.obj = ObjectSum(product);
  for (Label k = 0; k < r; ++k) t.obj.mult[product_label(prod, k, k)] = 1;

  t.m = Morphism(product, t.t2(), t.t1());
  for (Label i = 0; i < r; ++i)
    for (Label j = 0; j < r; ++j) {
      Label pi = product_label(prod, i, i), pj = product_label(prod, j, j);
      for (Label k = 0; k < r; ++k) {
        Label pk = product_label(prod, k, k);
        int nf = prod.n(pi, pj, pk);
        if (!nf) continue;
        int n1 = int(std::lround(std::sqrt(double(nf))));
        // vertex pairing: only the diagonal (alpha, alpha-bar) components
        for (int al = 0; al < n1; ++al) {
          int mu = al * n1 + al;
          FusionTree td{{2, pi, 0, pj, 0, pk, mu}};
          FusionTree tc{{1, pk, 0}};
          t.m.add(td, tc, 1);
        }
      }
    }
  t.eta = Morphism(product, Tuple{}, t.t1());
  t.eta.add(FusionTree::empty(), FusionTree{{1, product_label(prod, 0, 0), 0}}, 1);
  reconstruct_coproduct(t);
  return t;
}

Trivialization build_trivializing_algebra(const CategoryPtr& g) {
  if (!is_modular(g)) throw error("NotModular", g->name + " is not modular");
  Trivialization out;
  out.g = g;
  out.product = deligne_product(g, dual_category(g));
  out.T = build_trivializing_algebra_in(out.product);
  return out;
}

TrivializationReport verify_trivialization(const CategoryPtr& g) {
  Trivialization tr = build_trivializing_algebra(g);
  const auto& prod = *tr.product;
  auto ap = std::make_shared<FrobeniusAlgebra>(tr.T);
  TrivializationReport rep;

  auto simples = enumerate_simple_modules(ap);
  rep.n_simple_modules = int(simples.size());

  // the induced modules M_k = Ind(1 x U_k~) exhaust the simples
  std::vector<AModule> mk;
  bool mk_simple = true;
  for (Label k = 0; k < g->rank; ++k) {
    AModule m = induced_module(ap, ObjectSum(tr.product, product_label(prod, 0, k)));
    if (hom_module_dim(m, m) != 1) mk_simple = false;
    mk.push_back(std::move(m));
  }
  bool distinct = true;
  for (size_t a = 0; a < mk.size(); ++a)
    for (size_t b = a + 1; b < mk.size(); ++b)
      if (hom_module_dim(mk[a], mk[b]) != 0) distinct = false;

  // Ind(U_k x U_l~) decomposes with multiplicities N_{kr}^{l}
  rep.ind_decomposition_ok = mk_simple && distinct;
  for (Label k = 0; k < g->rank && rep.ind_decomposition_ok; ++k)
    for (Label l = 0; l < g->rank && rep.ind_decomposition_ok; ++l) {
      AModule ind = induced_module(ap, ObjectSum(tr.product, product_label(prod, k, l)));
      for (Label r = 0; r < g->rank; ++r) {
        int mult = hom_module_dim(mk[r], ind);
        if (mult != g->n(k, r, l)) {
          rep.ind_decomposition_ok = false;
          rep.detail = "Ind(" + std::to_string(k) + "," + std::to_string(l) +
                       ") multiplicity of M_" + std::to_string(r) + " is " +
                       std::to_string(mult) + ", expected N=" + std::to_string(g->n(k, r, l));
          break;
        }
      }
    }

  for (auto& s : simples)
    if (is_local(s)) ++rep.n_local;

  QuotientSummary summary = quotient_summary(ap);
  rep.quotient_rank = int(summary.dims_A.size());
  rep.dim_loc = summary.dim_loc;

  rep.passed = rep.n_simple_modules == g->rank && rep.n_local == 1 &&
               rep.ind_decomposition_ok && rep.quotient_rank == 1 &&
               std::abs(rep.dim_loc - 1.0) < 1e-9;
  if (!rep.passed && rep.detail.empty())
    rep.detail = "simples=" + std::to_string(rep.n_simple_modules) +
                 " local=" + std::to_string(rep.n_local) +
                 " rank=" + std::to_string(rep.quotient_rank) +
                 " dim_loc=" + std::to_string(rep.dim_loc);
  return rep;
}

}  // namespace ribcat

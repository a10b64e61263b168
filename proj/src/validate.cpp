#include "ribcat/category.hpp"
#include "ribcat/morphism.hpp"

#include <map>

namespace ribcat {

namespace {

// index bookkeeping for the 4-leaf recoupling bases
struct Idx {
  std::map<std::vector<int>, int> pos;
  int add(std::vector<int> k) {
    auto it = pos.find(k);
    if (it != pos.end()) return it->second;
    int p = int(pos.size());
    pos.emplace(std::move(k), p);
    return p;
  }
};

// pentagon: the two recoupling routes from (((ab)c)d -> e) to (a(b(cd)) -> e)
// must agree for every choice of labels
double pentagon_residual(const SkeletalCategory& cat) {
  double res = 0;
  const int rk = cat.rank;
  for (Label a = 0; a < rk; ++a)
    for (Label b = 0; b < rk; ++b)
      for (Label c = 0; c < rk; ++c)
        for (Label d = 0; d < rk; ++d)
          for (Label e = 0; e < rk; ++e) {
            // basis A: (p1,p2,alpha,beta,gamma); final basis C: (s,sigma,t,tau,eps)
            Idx A, C;
            for (Label p1 = 0; p1 < rk; ++p1)
              for (Label p2 = 0; p2 < rk; ++p2)
                for (int al = 0; al < cat.n(a, b, p1); ++al)
                  for (int be = 0; be < cat.n(p1, c, p2); ++be)
                    for (int ga = 0; ga < cat.n(p2, d, e); ++ga)
                      A.add({p1, p2, al, be, ga});
            if (A.pos.empty()) continue;
            for (Label s = 0; s < rk; ++s)
              for (Label t = 0; t < rk; ++t)
                for (int si = 0; si < cat.n(c, d, s); ++si)
                  for (int ta = 0; ta < cat.n(b, s, t); ++ta)
                    for (int ep = 0; ep < cat.n(a, t, e); ++ep)
                      C.add({s, t, si, ta, ep});
            Matrix routeX = Matrix::Zero(C.pos.size(), A.pos.size());
            Matrix routeY = Matrix::Zero(C.pos.size(), A.pos.size());
            for (auto& [ka, ia] : A.pos) {
              Label p1 = ka[0], p2 = ka[1];
              int al = ka[2], be = ka[3], ga = ka[4];
              // route X: F^{p1 c d}_e then F^{a b s}_e
              {
                FKey k1{p1, c, d, e};
                const Matrix& f1 = cat.f_block(p1, c, d, e);
                auto rows1 = cat.fblock_rows(k1);
                auto cols1 = cat.fblock_cols(k1);
                int r1 = -1;
                for (size_t r = 0; r < rows1.size(); ++r)
                  if (rows1[r] == std::make_tuple(p2, be, ga)) r1 = int(r);
                for (size_t c1 = 0; c1 < cols1.size(); ++c1) {
                  auto [s, si, de] = cols1[c1];
                  Scalar w1 = f1(r1, c1);
                  if (std::abs(w1) < 1e-14) continue;
                  FKey k2{a, b, s, e};
                  const Matrix& f2 = cat.f_block(a, b, s, e);
                  auto rows2 = cat.fblock_rows(k2);
                  auto cols2 = cat.fblock_cols(k2);
                  int r2 = -1;
                  for (size_t r = 0; r < rows2.size(); ++r)
                    if (rows2[r] == std::make_tuple(p1, al, de)) r2 = int(r);
                  for (size_t c2 = 0; c2 < cols2.size(); ++c2) {
                    auto [t, ta, ep] = cols2[c2];
                    Scalar w2 = f2(r2, c2);
                    if (std::abs(w2) < 1e-14) continue;
                    routeX(C.add({s, t, si, ta, ep}), ia) += w1 * w2;
                  }
                }
              }
              // route Y: F^{abc}_{p2}, then F^{a u d}_e, then F^{b c d}_v
              {
                FKey k1{a, b, c, p2};
                const Matrix& f1 = cat.f_block(a, b, c, p2);
                auto rows1 = cat.fblock_rows(k1);
                auto cols1 = cat.fblock_cols(k1);
                int r1 = -1;
                for (size_t r = 0; r < rows1.size(); ++r)
                  if (rows1[r] == std::make_tuple(p1, al, be)) r1 = int(r);
                for (size_t c1 = 0; c1 < cols1.size(); ++c1) {
                  auto [u, mu, nu] = cols1[c1];
                  Scalar w1 = f1(r1, c1);
                  if (std::abs(w1) < 1e-14) continue;
                  FKey k2{a, u, d, e};
                  const Matrix& f2 = cat.f_block(a, u, d, e);
                  auto rows2 = cat.fblock_rows(k2);
                  auto cols2 = cat.fblock_cols(k2);
                  int r2 = -1;
                  for (size_t r = 0; r < rows2.size(); ++r)
                    if (rows2[r] == std::make_tuple(p2, nu, ga)) r2 = int(r);
                  for (size_t c2 = 0; c2 < cols2.size(); ++c2) {
                    auto [v, rho, vs] = cols2[c2];
                    Scalar w2 = f2(r2, c2);
                    if (std::abs(w2) < 1e-14) continue;
                    FKey k3{b, c, d, v};
                    const Matrix& f3 = cat.f_block(b, c, d, v);
                    auto rows3 = cat.fblock_rows(k3);
                    auto cols3 = cat.fblock_cols(k3);
                    int r3 = -1;
                    for (size_t r = 0; r < rows3.size(); ++r)
                      if (rows3[r] == std::make_tuple(u, mu, rho)) r3 = int(r);
                    for (size_t c3 = 0; c3 < cols3.size(); ++c3) {
                      auto [w, om, ps] = cols3[c3];
                      Scalar w3 = f3(r3, c3);
                      if (std::abs(w3) < 1e-14) continue;
                      routeY(C.add({w, v, om, ps, vs}), ia) += w1 * w2 * w3;
                    }
                  }
                }
              }
            }
            res = std::max(res, inf_norm(routeX - routeY));
          }
  return res;
}

// both hexagons, expressed as equality of the direct braid-recoupling with the
// two-step adjacent braiding on three strands
double hexagon_residual(const SkeletalCategory& cat) {
  double res = 0;
  const int rk = cat.rank;
  for (int sign = 0; sign < 2; ++sign) {
    bool inv = (sign == 1);
    auto rblk = [&](Label i, Label j, Label k) -> Matrix {
      // matrix of the braid morphism (i,j) -> (j,i) on the root-k sector
      return inv ? Matrix(cat.r_block_inv(j, i, k)) : Matrix(cat.r_block(i, j, k));
    };
    for (Label i = 0; i < rk; ++i)
      for (Label j = 0; j < rk; ++j)
        for (Label k = 0; k < rk; ++k)
          for (Label l = 0; l < rk; ++l) {
            FKey kin{i, j, k, l};
            auto rows_in = cat.fblock_rows(kin);   // (p, alpha, beta) of (i,j,k;l)
            if (rows_in.empty()) continue;
            FKey kout{j, k, i, l};
            auto rows_out = cat.fblock_rows(kout);  // (q, gamma, delta) of (j,k,i;l)
            // direct route: F^{ijk}_l then braid i past the fused q
            Matrix direct = Matrix::Zero(rows_out.size(), rows_in.size());
            {
              const Matrix& f = cat.f_block(i, j, k, l);
              auto cols = cat.fblock_cols(kin);  // (q, gamma, delta')
              for (size_t ri = 0; ri < rows_in.size(); ++ri)
                for (size_t ci = 0; ci < cols.size(); ++ci) {
                  auto [q, ga, dp] = cols[ci];
                  Scalar w = f(ri, ci);
                  if (std::abs(w) < 1e-14) continue;
                  Matrix r = rblk(i, q, l);
                  for (int de = 0; de < r.cols(); ++de) {
                    int ro = -1;
                    for (size_t rr = 0; rr < rows_out.size(); ++rr)
                      if (rows_out[rr] == std::make_tuple(q, ga, de)) ro = int(rr);
                    direct(ro, ri) += w * r(dp, de);
                  }
                }
            }
            // stepwise: braid(1,2), recouple, braid(2,3), recouple back
            Matrix stepwise = Matrix::Zero(rows_out.size(), rows_in.size());
            {
              FKey kmid{j, i, k, l};
              auto rows_mid = cat.fblock_rows(kmid);  // (p, alpha', beta)
              const Matrix& fmid = cat.f_block(j, i, k, l);
              auto cols_mid = cat.fblock_cols(kmid);  // (r, phi, psi) of j(ik)
              const Matrix& gout = cat.g_block(j, k, i, l);
              auto cols_out = cat.fblock_cols(kout);  // (r', phi', psi') of j(ki)
              for (size_t ri = 0; ri < rows_in.size(); ++ri) {
                auto [p, al, be] = rows_in[ri];
                Matrix r1 = rblk(i, j, p);
                for (int ap = 0; ap < r1.cols(); ++ap) {
                  int rid = -1;
                  for (size_t rr = 0; rr < rows_mid.size(); ++rr)
                    if (rows_mid[rr] == std::make_tuple(p, ap, be)) rid = int(rr);
                  Scalar w1 = r1(al, ap);
                  if (std::abs(w1) < 1e-14) continue;
                  for (size_t ci = 0; ci < cols_mid.size(); ++ci) {
                    auto [r, ph, ps] = cols_mid[ci];
                    Scalar w2 = fmid(rid, ci);
                    if (std::abs(w2) < 1e-14) continue;
                    Matrix r2 = rblk(i, k, r);
                    for (int pp = 0; pp < r2.cols(); ++pp) {
                      int cid = -1;
                      for (size_t cc = 0; cc < cols_out.size(); ++cc)
                        if (cols_out[cc] == std::make_tuple(r, pp, ps)) cid = int(cc);
                      Scalar w3 = r2(ph, pp);
                      if (std::abs(w3) < 1e-14) continue;
                      for (size_t ro = 0; ro < rows_out.size(); ++ro) {
                        Scalar w4 = gout(cid, ro);
                        if (std::abs(w4) < 1e-14) continue;
                        stepwise(ro, ri) += w1 * w2 * w3 * w4;
                      }
                    }
                  }
                }
              }
            }
            res = std::max(res, inf_norm(direct - stepwise));
          }
  }
  return res;
}

}  // namespace

ValidationReport validate(const CategoryPtr& cp) {
  const SkeletalCategory& cat = *cp;
  cat.check_well_formed();
  ValidationReport rep;

  rep.pentagon_residual = pentagon_residual(cat);
  rep.hexagon_residual = hexagon_residual(cat);

  // unit gauge: stored blocks with a unit leg must be identities
  for (auto& [key, m] : cat.F)
    if (key.i == 0 || key.j == 0 || key.k == 0) {
      Matrix id = Matrix::Identity(m.rows(), m.cols());
      if (inf_norm(m - id) > cat.tol.abs_eps) rep.unit_ok = false;
    }
  for (auto& [key, m] : cat.R) {
    auto [i, j, k] = key;
    if (i == 0 || j == 0) {
      Matrix id = Matrix::Identity(m.rows(), m.cols());
      if (inf_norm(m - id) > cat.tol.abs_eps) rep.unit_ok = false;
    }
  }

  // G is the two-sided inverse of F
  for (auto& [key, m] : cat.F) {
    const Matrix& g = cat.g_block(key.i, key.j, key.k, key.l);
    Matrix id = Matrix::Identity(m.rows(), m.rows());
    rep.g_inverse_residual = std::max(rep.g_inverse_residual, inf_norm(Matrix(m * g) - id));
    rep.g_inverse_residual = std::max(rep.g_inverse_residual, inf_norm(Matrix(g * m) - id));
  }

  // dimension consistency
  if (std::abs(cat.dims[0] - 1.0) > cat.tol.abs_eps) rep.dim_residual = std::abs(cat.dims[0] - 1.0);
  for (Label i = 0; i < cat.rank; ++i)
    for (Label j = 0; j < cat.rank; ++j) {
      double lhs = cat.dims[i] * cat.dims[j], rhs = 0;
      for (Label k = 0; k < cat.rank; ++k) rhs += cat.n(i, j, k) * cat.dims[k];
      rep.dim_residual = std::max(rep.dim_residual, std::abs(lhs - rhs));
    }

  // twist axioms on the data level
  if (!approx_eq(cat.theta[0], Scalar(1), cat.tol)) rep.twist_dual_ok = false;
  for (Label i = 0; i < cat.rank; ++i)
    if (!approx_eq(cat.theta[i], cat.theta[cat.dual_of(i)], cat.tol)) rep.twist_dual_ok = false;

  // engine-level duality checks: zig-zags and traces
  for (Label x = 0; x < cat.rank; ++x) {
    ObjectSum X(cp, x);
    ObjectSum Xd = X.dual_object();
    Morphism b = cup_cap(X, CupKind::b), d = cup_cap(X, CupKind::d);
    Morphism bt = cup_cap(X, CupKind::b_tilde), dt = cup_cap(X, CupKind::d_tilde);
    Morphism idX = identity(cp, Tuple{X}), idXd = identity(cp, Tuple{Xd});
    Morphism z1 = compose(tensor(idX, d), tensor(b, idX)) - idX;
    Morphism z2 = compose(tensor(d, idXd), tensor(idXd, b)) - idXd;
    Morphism z3 = compose(tensor(idXd, dt), tensor(bt, idXd)) - idXd;
    Morphism z4 = compose(tensor(dt, idX), tensor(idX, bt)) - idX;
    rep.zigzag_residual = std::max({rep.zigzag_residual, z1.norm_inf(), z2.norm_inf(),
                                    z3.norm_inf(), z4.norm_inf()});
    Scalar tl = trace_left(idX), tr = trace_right(idX);
    rep.trace_residual = std::max(rep.trace_residual, std::abs(tl - Scalar(cat.dims[x])));
    rep.trace_residual = std::max(rep.trace_residual, std::abs(tr - Scalar(cat.dims[x])));
  }

  rep.passed = rep.pentagon_residual <= cat.tol.abs_eps && rep.hexagon_residual <= cat.tol.abs_eps &&
               rep.unit_ok && rep.dim_residual <= cat.tol.abs_eps * 10 && rep.twist_dual_ok &&
               rep.g_inverse_residual <= cat.tol.abs_eps && rep.zigzag_residual <= cat.tol.abs_eps &&
               rep.trace_residual <= cat.tol.abs_eps * 10;
  return rep;
}

Matrix s_matrix(const CategoryPtr& cp) {
  const SkeletalCategory& cat = *cp;
  Matrix s(cat.rank, cat.rank);
  for (Label i = 0; i < cat.rank; ++i)
    for (Label j = 0; j < cat.rank; ++j) {
      ObjectSum Ui(cp, i), Uj(cp, j);
      // tr(c_{U_i,U_j} o c_{U_j,U_i}), an endomorphism of U_j (x) U_i
      Morphism m = compose(braid(Ui, Uj, false), braid(Uj, Ui, false));
      Scalar diag = trace(m);
      Scalar formula = s_formula(cat, i, j);
      if (!approx_eq(diag, formula, cat.tol))
        throw error("InconsistentData",
                    "s-matrix diagram and twist/fusion formula disagree at (" + std::to_string(i) +
                        "," + std::to_string(j) + "): " + std::to_string(diag.real()) + "+" +
                        std::to_string(diag.imag()) + "i vs " + std::to_string(formula.real()) +
                        "+" + std::to_string(formula.imag()) + "i");
      s(i, j) = diag;
    }
  return s;
}

}  // namespace ribcat

#include "ribcat/category.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace ribcat {

uint64_t SkeletalCategory::next_uid() {
  static std::atomic<uint64_t> counter{1};
  return counter.fetch_add(1);
}

std::vector<Label> SkeletalCategory::fusion_products(Label i, Label j) const {
  std::vector<Label> out;
  for (Label k = 0; k < rank; ++k)
    if (n(i, j, k) > 0) out.push_back(k);
  return out;
}

std::vector<std::tuple<Label, int, int>> SkeletalCategory::fblock_rows(const FKey& key) const {
  std::vector<std::tuple<Label, int, int>> rows;
  for (Label p = 0; p < rank; ++p) {
    int n1 = n(key.i, key.j, p), n2 = n(p, key.k, key.l);
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n2; ++b) rows.emplace_back(p, a, b);
  }
  return rows;
}

std::vector<std::tuple<Label, int, int>> SkeletalCategory::fblock_cols(const FKey& key) const {
  std::vector<std::tuple<Label, int, int>> cols;
  for (Label q = 0; q < rank; ++q) {
    int n1 = n(key.j, key.k, q), n2 = n(key.i, q, key.l);
    for (int g = 0; g < n1; ++g)
      for (int d = 0; d < n2; ++d) cols.emplace_back(q, g, d);
  }
  return cols;
}

const Matrix& SkeletalCategory::f_block(Label i, Label j, Label k, Label l) const {
  FKey key{i, j, k, l};
  auto it = F.find(key);
  if (it != F.end()) return it->second;
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto cit = f_unit_cache_.find(key);
  if (cit != f_unit_cache_.end()) return cit->second;

  auto rows = fblock_rows(key);
  auto cols = fblock_cols(key);
  if (rows.size() != cols.size())
    throw error("MalformedData", "F-block (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                     std::to_string(k) + ";" + std::to_string(l) +
                                     ") is not square: fusion data inconsistent");
  if (rows.empty()) {
    return f_unit_cache_.emplace(key, Matrix(0, 0)).first->second;
  }
  if (i != 0 && j != 0 && k != 0)
    throw error("MalformedData", "missing mandatory F entry at (" + std::to_string(i) + "," +
                                     std::to_string(j) + "," + std::to_string(k) + ";" +
                                     std::to_string(l) + ")");
  // unit-leg gauge: the recoupling is the identity map
  Matrix id = Matrix::Identity(rows.size(), cols.size());
  return f_unit_cache_.emplace(key, std::move(id)).first->second;
}

const Matrix& SkeletalCategory::g_block(Label i, Label j, Label k, Label l) const {
  FKey key{i, j, k, l};
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = g_cache_.find(key);
    if (it != g_cache_.end()) return it->second;
  }
  const Matrix& f = f_block(i, j, k, l);
  Matrix g = f.rows() ? Matrix(f.inverse()) : Matrix(0, 0);
  std::lock_guard<std::mutex> lock(cache_mu_);
  return g_cache_.emplace(key, std::move(g)).first->second;
}

const Matrix& SkeletalCategory::r_block(Label i, Label j, Label k) const {
  auto key = std::make_tuple(i, j, k);
  auto it = R.find(key);
  if (it != R.end()) return it->second;
  int nf = n(i, j, k);
  if (nf == 0) {
    static const Matrix empty(0, 0);
    return empty;
  }
  if (i != 0 && j != 0)
    throw error("MalformedData", "missing mandatory R entry at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ";" + std::to_string(k) + ")");
  auto& self = const_cast<SkeletalCategory&>(*this);
  std::lock_guard<std::mutex> lock(cache_mu_);
  return self.R.emplace(key, Matrix::Identity(nf, nf)).first->second;
}

const Matrix& SkeletalCategory::r_block_inv(Label i, Label j, Label k) const {
  auto key = std::make_tuple(i, j, k);
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = r_inv_cache_.find(key);
    if (it != r_inv_cache_.end()) return it->second;
  }
  const Matrix& r = r_block(i, j, k);
  Matrix ri = r.rows() ? Matrix(r.inverse()) : Matrix(0, 0);
  std::lock_guard<std::mutex> lock(cache_mu_);
  return r_inv_cache_.emplace(key, std::move(ri)).first->second;
}

Scalar SkeletalCategory::cap_coeff(Label x) const {
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (cap_cache_.empty()) cap_cache_.assign(rank, Scalar(0));
    if (cap_cache_[x] != Scalar(0)) return cap_cache_[x];
  }
  // zig-zag (id_x (x) d_x) o (b_x (x) id_x) = F^{x xbar x}_x|_{00} * kb * kd * id
  Label xb = dual_of(x);
  const Matrix& f = f_block(x, xb, x, x);
  // locate the row (p=0,0,0) and column (q=0,0,0)
  auto rows = fblock_rows(FKey{x, xb, x, x});
  auto cols = fblock_cols(FKey{x, xb, x, x});
  int r0 = -1, c0 = -1;
  for (size_t r = 0; r < rows.size(); ++r)
    if (std::get<0>(rows[r]) == 0) r0 = int(r);
  for (size_t c = 0; c < cols.size(); ++c)
    if (std::get<0>(cols[c]) == 0) c0 = int(c);
  if (r0 < 0 || c0 < 0) throw error("MalformedData", "no duality channel for label " + std::to_string(x));
  Scalar f0 = f(r0, c0);
  if (std::abs(f0) < 1e-14) throw error("MalformedData", "vanishing duality F-entry for label " + std::to_string(x));
  std::lock_guard<std::mutex> lock(cache_mu_);
  cap_cache_[x] = pivotal[x] / f0;
  return cap_cache_[x];
}

void SkeletalCategory::check_well_formed() const {
  if (rank <= 0) throw error("MalformedData", "rank must be positive");
  if (int(dual.size()) != rank || int(theta.size()) != rank || int(dims.size()) != rank ||
      int(pivotal.size()) != rank || N.size() != size_t(rank) * rank * rank)
    throw error("MalformedData", "table sizes do not match rank");
  for (Label i = 0; i < rank; ++i) {
    if (dual[i] < 0 || dual[i] >= rank || dual[dual[i]] != i)
      throw error("MalformedData", "dual map is not an involution");
    if (!is_finite(theta[i]) || !std::isfinite(dims[i]))
      throw error("MalformedData", "non-finite twist or dimension");
  }
  if (dual[0] != 0) throw error("MalformedData", "unit must be self-dual");
  for (Label j = 0; j < rank; ++j)
    for (Label k = 0; k < rank; ++k) {
      if (n(0, j, k) != (j == k ? 1 : 0) || n(j, 0, k) != (j == k ? 1 : 0))
        throw error("MalformedData", "unit fusion rules violated");
    }
  for (Label i = 0; i < rank; ++i)
    if (n(i, dual[i], 0) != 1) throw error("MalformedData", "duality channel must be one-dimensional");
  for (auto& [key, m] : F) {
    if (key.i < 0 || key.i >= rank || key.j < 0 || key.j >= rank || key.k < 0 || key.k >= rank ||
        key.l < 0 || key.l >= rank)
      throw error("MalformedData", "F index out of range");
    auto rows = fblock_rows(key);
    auto cols = fblock_cols(key);
    if (size_t(m.rows()) != rows.size() || size_t(m.cols()) != cols.size())
      throw error("MalformedData", "F-block has wrong shape");
  }
  for (auto& [key, m] : R) {
    auto [i, j, k] = key;
    if (i < 0 || i >= rank || j < 0 || j >= rank || k < 0 || k >= rank)
      throw error("MalformedData", "R index out of range");
    if (m.rows() != n(i, j, k) || m.cols() != n(j, i, k))
      throw error("MalformedData", "R-block has wrong shape");
  }
}

void SkeletalCategory::clear_caches() const {
  f_unit_cache_.clear();
  g_cache_.clear();
  r_inv_cache_.clear();
  cap_cache_.clear();
}

Scalar s_formula(const SkeletalCategory& cat, Label i, Label j) {
  Scalar s = 0;
  for (Label k = 0; k < cat.rank; ++k)
    if (cat.n(i, j, k) > 0)
      s += double(cat.n(i, j, k)) * cat.theta[k] / (cat.theta[i] * cat.theta[j]) * cat.dims[k];
  return s;
}

bool is_modular(const CategoryPtr& catp) {
  const SkeletalCategory& cat = *catp;
  Matrix s(cat.rank, cat.rank);
  for (Label i = 0; i < cat.rank; ++i)
    for (Label j = 0; j < cat.rank; ++j) s(i, j) = s_formula(cat, i, j);
  double det = std::abs(Scalar(s.determinant()));
  bool det_ok = det > cat.tol.abs_eps;

  // twist criterion (transparency test): k is transparent iff
  // theta_s = theta_k theta_r on every channel N_{rk}^s != 0
  int transparent = 0;
  for (Label k = 0; k < cat.rank; ++k) {
    bool trans = true;
    for (Label r = 0; r < cat.rank && trans; ++r)
      for (Label ss = 0; ss < cat.rank && trans; ++ss)
        if (cat.n(r, k, ss) > 0 &&
            !approx_eq(cat.theta[ss], cat.theta[k] * cat.theta[r], cat.tol))
          trans = false;
    if (trans) ++transparent;
  }
  bool twist_ok = (transparent == 1);
  if (det_ok != twist_ok)
    throw error("CriteriaDisagree", "det(s) and the twist criterion disagree for " + cat.name);
  return det_ok;
}

double verify_s_squared(const CategoryPtr& catp) {
  const SkeletalCategory& cat = *catp;
  Matrix s = s_matrix(catp);
  GlobalCharges g = global_dim_and_charges(catp);
  Matrix c = Matrix::Zero(cat.rank, cat.rank);
  for (Label i = 0; i < cat.rank; ++i) c(i, cat.dual_of(i)) = 1;
  return inf_norm(Matrix(s * s) - g.dim * c);
}

GlobalCharges global_dim_and_charges(const CategoryPtr& catp) {
  const SkeletalCategory& cat = *catp;
  GlobalCharges g;
  g.p_plus = g.p_minus = 0;
  for (Label i = 0; i < cat.rank; ++i) {
    double d2 = cat.dims[i] * cat.dims[i];
    g.dim += d2;
    g.p_plus += cat.theta[i] * d2;
    g.p_minus += d2 / cat.theta[i];
  }
  if (!approx_eq(g.p_plus * g.p_minus, Scalar(g.dim), cat.tol))
    throw error("ChargeIdentityViolated",
                "p+ p- != Dim for " + cat.name + " (category is not modular)");
  return g;
}

CategoryPtr dual_category(const CategoryPtr& cat) {
  auto out = std::make_shared<SkeletalCategory>();
  out->name = "dual(" + cat->name + ")";
  out->rank = cat->rank;
  out->labels.reserve(cat->rank);
  for (auto& l : cat->labels) out->labels.push_back(l + "~");
  out->dual = cat->dual;
  out->N = cat->N;
  out->dims = cat->dims;
  out->pivotal = cat->pivotal;
  out->tol = cat->tol;
  out->theta.resize(cat->rank);
  for (Label i = 0; i < cat->rank; ++i) out->theta[i] = Scalar(1.0) / cat->theta[i];
  for (Label i = 0; i < cat->rank; ++i)
    for (Label j = 0; j < cat->rank; ++j)
      for (Label k = 0; k < cat->rank; ++k) {
        const Matrix& r = cat->r_block(i, j, k);
        if (r.rows() && i != 0 && j != 0)
          out->R[{i, j, k}] = r.inverse().transpose();
      }
  for (Label i = 1; i < cat->rank; ++i)
    for (Label j = 1; j < cat->rank; ++j)
      for (Label k = 1; k < cat->rank; ++k)
        for (Label l = 0; l < cat->rank; ++l) {
          FKey key{i, j, k, l};
          auto rows = cat->fblock_rows(key);
          if (rows.empty()) continue;
          const Matrix& f = cat->f_block(i, j, k, l);
          out->F[key] = f.inverse().transpose();
        }
  out->check_well_formed();
  return out;
}

Label product_label(const SkeletalCategory& prod, Label i, Label x) {
  if (!prod.factor_rank2) throw error("Internal", "not a product category");
  return i * prod.factor_rank2 + x;
}

std::pair<Label, Label> product_pair(const SkeletalCategory& prod, Label p) {
  if (!prod.factor_rank2) throw error("Internal", "not a product category");
  return {p / prod.factor_rank2, p % prod.factor_rank2};
}

CategoryPtr deligne_product(const CategoryPtr& c1, const CategoryPtr& c2) {
  auto out = std::make_shared<SkeletalCategory>();
  const int r1 = c1->rank, r2 = c2->rank;
  out->rank = r1 * r2;
  out->name = c1->name + " x " + c2->name;
  out->factor_rank2 = r2;
  out->tol = c1->tol;
  auto pk = [r2](Label a, Label b) { return a * r2 + b; };
  out->labels.resize(out->rank);
  out->dual.resize(out->rank);
  out->theta.resize(out->rank);
  out->dims.resize(out->rank);
  out->pivotal.resize(out->rank);
  out->N.assign(size_t(out->rank) * out->rank * out->rank, 0);
  for (Label a = 0; a < r1; ++a)
    for (Label b = 0; b < r2; ++b) {
      Label p = pk(a, b);
      out->labels[p] = "(" + c1->labels[a] + "," + c2->labels[b] + ")";
      out->dual[p] = pk(c1->dual_of(a), c2->dual_of(b));
      out->theta[p] = c1->theta[a] * c2->theta[b];
      out->dims[p] = c1->dims[a] * c2->dims[b];
      out->pivotal[p] = c1->pivotal[a] * c2->pivotal[b];
    }
  for (Label i1 = 0; i1 < r1; ++i1)
    for (Label j1 = 0; j1 < r1; ++j1)
      for (Label k1 = 0; k1 < r1; ++k1) {
        int n1 = c1->n(i1, j1, k1);
        if (!n1) continue;
        for (Label i2 = 0; i2 < r2; ++i2)
          for (Label j2 = 0; j2 < r2; ++j2)
            for (Label k2 = 0; k2 < r2; ++k2) {
              int n2 = c2->n(i2, j2, k2);
              if (!n2) continue;
              out->N[(size_t(pk(i1, i2)) * out->rank + pk(j1, j2)) * out->rank + pk(k1, k2)] =
                  n1 * n2;
            }
      }

  // R-blocks: kronecker product with the multiplicity pairing (a1,a2)
  for (auto& [key1, ra] : c1->R) {
    auto [i1, j1, k1] = key1;
    for (Label i2 = 0; i2 < r2; ++i2)
      for (Label j2 = 0; j2 < r2; ++j2)
        for (Label k2 = 0; k2 < r2; ++k2) {
          const Matrix& rb = c2->r_block(i2, j2, k2);
          if (!rb.rows()) continue;
          Matrix r(ra.rows() * rb.rows(), ra.cols() * rb.cols());
          for (int a = 0; a < ra.rows(); ++a)
            for (int b = 0; b < rb.rows(); ++b)
              for (int c = 0; c < ra.cols(); ++c)
                for (int d = 0; d < rb.cols(); ++d)
                  r(a * rb.rows() + b, c * rb.cols() + d) = ra(a, c) * rb(b, d);
          out->R[{pk(i1, i2), pk(j1, j2), pk(k1, k2)}] = std::move(r);
        }
  }
  // also unit-leg R of factor 1 paired with nontrivial R of factor 2
  for (auto& [key2, rb] : c2->R) {
    auto [i2, j2, k2] = key2;
    for (Label i1 = 0; i1 < r1; ++i1)
      for (Label j1 = 0; j1 < r1; ++j1) {
        if (i1 != 0 && j1 != 0) continue;  // nontrivial pairs handled above
        for (Label k1 : c1->fusion_products(i1, j1)) {
          const Matrix& ra = c1->r_block(i1, j1, k1);
          if (!ra.rows()) continue;
          Matrix r(ra.rows() * rb.rows(), ra.cols() * rb.cols());
          for (int a = 0; a < ra.rows(); ++a)
            for (int b = 0; b < rb.rows(); ++b)
              for (int c = 0; c < ra.cols(); ++c)
                for (int d = 0; d < rb.cols(); ++d)
                  r(a * rb.rows() + b, c * rb.cols() + d) = ra(a, c) * rb(b, d);
          out->R[{pk(i1, i2), pk(j1, j2), pk(k1, k2)}] = std::move(r);
        }
      }
  }

  // F-blocks for all non-unit legs with nonempty index sets
  for (Label i = 0; i < out->rank; ++i) {
    if (i == 0) continue;
    auto [i1, i2] = std::pair{i / r2, i % r2};
    for (Label j = 1; j < out->rank; ++j) {
      auto [j1, j2] = std::pair{j / r2, j % r2};
      for (Label k = 1; k < out->rank; ++k) {
        auto [k1, k2] = std::pair{k / r2, k % r2};
        for (Label l = 0; l < out->rank; ++l) {
          auto [l1, l2] = std::pair{l / r2, l % r2};
          FKey key{i, j, k, l};
          auto rows = out->fblock_rows(key);
          if (rows.empty()) continue;
          auto cols = out->fblock_cols(key);
          const Matrix& fa = c1->f_block(i1, j1, k1, l1);
          const Matrix& fb = c2->f_block(i2, j2, k2, l2);
          auto rows1 = c1->fblock_rows(FKey{i1, j1, k1, l1});
          auto cols1 = c1->fblock_cols(FKey{i1, j1, k1, l1});
          auto rows2 = c2->fblock_rows(FKey{i2, j2, k2, l2});
          auto cols2 = c2->fblock_cols(FKey{i2, j2, k2, l2});
          auto idx1 = [&](const std::vector<std::tuple<Label, int, int>>& v, Label p, int a,
                          int b) -> int {
            for (size_t t = 0; t < v.size(); ++t)
              if (v[t] == std::make_tuple(p, a, b)) return int(t);
            return -1;
          };
          Matrix f(rows.size(), cols.size());
          for (size_t rr = 0; rr < rows.size(); ++rr) {
            auto [p, a, b] = rows[rr];
            Label p1 = p / r2, p2 = p % r2;
            int na2 = c2->n(i2, j2, p2), nb2 = c2->n(p2, k2, l2);
            int a1 = a / na2, a2 = a % na2, b1 = b / nb2, b2 = b % nb2;
            int r1i = idx1(rows1, p1, a1, b1), r2i = idx1(rows2, p2, a2, b2);
            for (size_t cc = 0; cc < cols.size(); ++cc) {
              auto [q, g, d] = cols[cc];
              Label q1 = q / r2, q2 = q % r2;
              int ng2 = c2->n(j2, k2, q2), nd2 = c2->n(i2, q2, l2);
              int g1 = g / ng2, g2 = g % ng2, d1 = d / nd2, d2 = d % nd2;
              int c1i = idx1(cols1, q1, g1, d1), c2i = idx1(cols2, q2, g2, d2);
              f(rr, cc) = fa(r1i, c1i) * fb(r2i, c2i);
            }
          }
          out->F[key] = std::move(f);
        }
      }
    }
  }
  out->check_well_formed();
  return out;
}

CategoryPtr pointed_category(const std::string& name, const std::vector<int>& orders,
                             const std::vector<std::vector<double>>& braid_exponent) {
  const int nf = int(orders.size());
  int rank = 1;
  for (int o : orders) rank *= o;
  auto decode = [&](Label a) {
    std::vector<int> comp(nf);
    for (int u = nf - 1; u >= 0; --u) {
      comp[u] = a % orders[u];
      a /= orders[u];
    }
    return comp;
  };
  auto encode = [&](const std::vector<int>& comp) {
    Label a = 0;
    for (int u = 0; u < nf; ++u) a = a * orders[u] + (comp[u] % orders[u] + orders[u]) % orders[u];
    return a;
  };
  auto out = std::make_shared<SkeletalCategory>();
  out->name = name;
  out->rank = rank;
  out->labels.resize(rank);
  out->dual.resize(rank);
  out->theta.resize(rank);
  out->dims.assign(rank, 1.0);
  out->pivotal.assign(rank, Scalar(1));
  out->N.assign(size_t(rank) * rank * rank, 0);
  const double two_pi = 2.0 * std::numbers::pi;
  auto rphase = [&](Label a, Label b) {
    auto ca = decode(a), cb = decode(b);
    double e = 0;
    for (int u = 0; u < nf; ++u)
      for (int v = 0; v < nf; ++v) e += ca[u] * braid_exponent[u][v] * cb[v];
    return std::polar(1.0, two_pi * e);
  };
  for (Label a = 0; a < rank; ++a) {
    auto ca = decode(a);
    std::string nm;
    for (int u = 0; u < nf; ++u) nm += (u ? "." : "") + std::to_string(ca[u]);
    out->labels[a] = nm;
    std::vector<int> inv(nf);
    for (int u = 0; u < nf; ++u) inv[u] = (orders[u] - ca[u]) % orders[u];
    out->dual[a] = encode(inv);
    out->theta[a] = rphase(a, a);
  }
  for (Label a = 0; a < rank; ++a)
    for (Label b = 0; b < rank; ++b) {
      auto ca = decode(a), cb = decode(b);
      std::vector<int> s(nf);
      for (int u = 0; u < nf; ++u) s[u] = ca[u] + cb[u];
      Label c = encode(s);
      out->N[(size_t(a) * rank + b) * rank + c] = 1;
      out->R[{a, b, c}] = Matrix::Constant(1, 1, rphase(a, b));
    }
  for (Label a = 1; a < rank; ++a)
    for (Label b = 1; b < rank; ++b)
      for (Label c = 1; c < rank; ++c) {
        auto ca = decode(a), cb = decode(b), cc = decode(c);
        std::vector<int> s(nf);
        for (int u = 0; u < nf; ++u) s[u] = ca[u] + cb[u] + cc[u];
        Label l = encode(s);
        out->F[FKey{a, b, c, l}] = Matrix::Constant(1, 1, Scalar(1));
      }
  out->check_well_formed();
  return out;
}

}  // namespace ribcat

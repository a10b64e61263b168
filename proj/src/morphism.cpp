#include "ribcat/morphism.hpp"

#include <algorithm>
#include <sstream>

namespace ribcat {

namespace {

constexpr double kDropEps = 1e-12;

FusionTree make_tree(const std::vector<std::pair<Label, int>>& leaves,
                     const std::vector<Label>& internals_tail, const std::vector<int>& mults) {
  FusionTree t;
  int n = int(leaves.size());
  t.d.reserve(1 + 2 * n + (n > 0 ? n - 1 : 0) + (n > 0 ? n - 1 : 0));
  t.d.push_back(n);
  for (auto& [l, s] : leaves) {
    t.d.push_back(l);
    t.d.push_back(s);
  }
  for (Label m : internals_tail) t.d.push_back(m);
  for (int m : mults) t.d.push_back(m);
  return t;
}

// split a tree into (leaves, internals_tail, mults)
void unpack_tree(const FusionTree& t, std::vector<std::pair<Label, int>>& leaves,
                 std::vector<Label>& internals_tail, std::vector<int>& mults) {
  int n = t.n();
  leaves.clear();
  internals_tail.clear();
  mults.clear();
  for (int i = 0; i < n; ++i) leaves.emplace_back(t.leaf_label(i), t.leaf_slot(i));
  for (int i = 1; i < n; ++i) internals_tail.push_back(t.internal(i));
  for (int i = 0; i + 1 < n; ++i) mults.push_back(t.vertex_mult(i));
}

FusionTree tree_append(const FusionTree& t, Label leaf, int slot, Label new_root, int mu) {
  std::vector<std::pair<Label, int>> leaves;
  std::vector<Label> internals;
  std::vector<int> mults;
  unpack_tree(t, leaves, internals, mults);
  leaves.emplace_back(leaf, slot);
  if (t.n() >= 1) {
    internals.push_back(new_root);
    mults.push_back(mu);
  }
  return make_tree(leaves, internals, mults);
}

FusionTree tree_drop_last(const FusionTree& t) {
  std::vector<std::pair<Label, int>> leaves;
  std::vector<Label> internals;
  std::vector<int> mults;
  unpack_tree(t, leaves, internals, mults);
  leaves.pop_back();
  if (!internals.empty()) {
    internals.pop_back();
    mults.pop_back();
  }
  return make_tree(leaves, internals, mults);
}

FusionTree tree_prefix(const FusionTree& t, int nleft) {
  std::vector<std::pair<Label, int>> leaves;
  std::vector<Label> internals;
  std::vector<int> mults;
  unpack_tree(t, leaves, internals, mults);
  leaves.resize(nleft);
  internals.resize(nleft > 0 ? nleft - 1 : 0);
  mults.resize(nleft > 0 ? nleft - 1 : 0);
  return make_tree(leaves, internals, mults);
}

struct PairKey {  // (tX, tU, join label, join mult)
  std::vector<int> bytes;
  bool operator==(const PairKey& o) const { return bytes == o.bytes; }
};
struct PairKeyHash {
  size_t operator()(const PairKey& k) const {
    size_t h = 14695981039346656037ull;
    for (int x : k.bytes) {
      h ^= size_t(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

PairKey make_pair_key(const FusionTree& tx, const FusionTree& tu, Label c, int mu) {
  PairKey k;
  k.bytes.reserve(tx.d.size() + tu.d.size() + 2);
  k.bytes.insert(k.bytes.end(), tx.d.begin(), tx.d.end());
  k.bytes.insert(k.bytes.end(), tu.d.begin(), tu.d.end());
  k.bytes.push_back(c);
  k.bytes.push_back(mu);
  return k;
}

using SparseVec = std::vector<std::pair<FusionTree, Scalar>>;
using SparsePairVec = std::vector<std::pair<PairKey, Scalar>>;

struct EngineCache {
  uint64_t uid = 0;
  std::unordered_map<PairKey, SparseVec, PairKeyHash> merge_cache;
  std::unordered_map<PairKey, SparsePairVec, PairKeyHash> unmerge_cache;
};

EngineCache& cache_for(const SkeletalCategory* cat) {
  thread_local std::vector<std::unique_ptr<EngineCache>> caches;
  for (auto& c : caches)
    if (c->uid == cat->uid) return *c;
  caches.push_back(std::make_unique<EngineCache>());
  caches.back()->uid = cat->uid;
  if (caches.size() > 64) caches.erase(caches.begin());
  return *caches.back();
}

int fblock_row_index(const SkeletalCategory& cat, const FKey& key, Label p, int a, int b) {
  int idx = 0;
  for (Label pp = 0; pp < p; ++pp) idx += cat.n(key.i, key.j, pp) * cat.n(pp, key.k, key.l);
  return idx + a * cat.n(p, key.k, key.l) + b;
}
int fblock_col_index(const SkeletalCategory& cat, const FKey& key, Label q, int g, int d) {
  int idx = 0;
  for (Label qq = 0; qq < q; ++qq) idx += cat.n(key.j, key.k, qq) * cat.n(key.i, qq, key.l);
  return idx + g * cat.n(key.i, q, key.l) + d;
}

// coefficients of the pair-basis fusion vector (tX, tU joined by (a,b->c;mu))
// in the left-combed fusion basis of the concatenated tuple
const SparseVec& merge_pair(const SkeletalCategory& cat, const FusionTree& tx,
                            const FusionTree& tu, Label c, int mu) {
  auto& cache = cache_for(&cat);
  PairKey key = make_pair_key(tx, tu, c, mu);
  auto it = cache.merge_cache.find(key);
  if (it != cache.merge_cache.end()) return it->second;

  SparseVec out;
  const Label a = tx.root(), b = tu.root();
  if (tu.n() == 0) {
    out.emplace_back(tx, Scalar(1));
  } else if (tx.n() == 0) {
    out.emplace_back(tu, Scalar(1));
  } else if (tu.n() == 1) {
    out.emplace_back(tree_append(tx, tu.leaf_label(0), tu.leaf_slot(0), c, mu), Scalar(1));
  } else {
    // peel off the last leaf of tU and recouple with one (inverse) F-move
    const Label ell = tu.leaf_label(tu.n() - 1);
    const int slot = tu.leaf_slot(tu.n() - 1);
    const FusionTree tup = tree_drop_last(tu);
    const Label bp = tup.root();
    const int nu = tu.vertex_mult(tu.n() - 2);
    FKey fk{a, bp, ell, c};
    const Matrix& g = cat.g_block(a, bp, ell, c);
    int grow = fblock_col_index(cat, fk, b, nu, mu);  // g rows run over F columns
    auto rows = cat.fblock_rows(fk);
    std::map<FusionTree, Scalar> acc;
    for (size_t ri = 0; ri < rows.size(); ++ri) {
      Scalar coeff = g(grow, ri);
      if (std::abs(coeff) < kDropEps) continue;
      auto [p, alpha, beta] = rows[ri];
      const SparseVec& rec = merge_pair(cat, tx, tup, p, alpha);
      for (auto& [tprime, w] : rec) {
        FusionTree t = tree_append(tprime, ell, slot, c, beta);
        acc[t] += coeff * w;
      }
    }
    for (auto& [t, v] : acc)
      if (std::abs(v) > kDropEps) out.emplace_back(t, v);
  }
  return cache.merge_cache.emplace(std::move(key), std::move(out)).first->second;
}

// coefficients of the combed fusion vector T in the pair basis split after nleft leaves
const SparsePairVec& unmerge(const SkeletalCategory& cat, const FusionTree& t, int nleft) {
  auto& cache = cache_for(&cat);
  PairKey key;
  key.bytes = t.d;
  key.bytes.push_back(-1 - nleft);  // tag to distinguish from merge keys
  auto it = cache.unmerge_cache.find(key);
  if (it != cache.unmerge_cache.end()) return it->second;

  SparsePairVec out;
  const int n = t.n();
  const int m = n - nleft;
  if (m == 0) {
    out.emplace_back(make_pair_key(t, FusionTree::empty(), t.root(), 0), Scalar(1));
  } else if (nleft == 0) {
    out.emplace_back(make_pair_key(FusionTree::empty(), t, t.root(), 0), Scalar(1));
  } else if (m == 1) {
    FusionTree tx = tree_drop_last(t);
    FusionTree tu = make_tree({{t.leaf_label(n - 1), t.leaf_slot(n - 1)}}, {}, {});
    int mu = t.vertex_mult(n - 2);
    out.emplace_back(make_pair_key(tx, tu, t.root(), mu), Scalar(1));
  } else {
    const Label c = t.root();
    const Label p = t.internal(n - 2);
    const int beta = t.vertex_mult(n - 2);
    const Label ell = t.leaf_label(n - 1);
    const int slot = t.leaf_slot(n - 1);
    FusionTree tprime = tree_drop_last(t);
    std::unordered_map<PairKey, Scalar, PairKeyHash> acc;
    for (auto& [k0, w] : unmerge(cat, tprime, nleft)) {
      // decode k0 = (tx, tu', a, q'...)
      // reconstruct the tx/tu' trees from the key bytes
      int ntx = k0.bytes[0];
      size_t txlen = 1 + 2 * ntx + (ntx > 0 ? 2 * (ntx - 1) : 0);
      FusionTree tx;
      tx.d.assign(k0.bytes.begin(), k0.bytes.begin() + txlen);
      FusionTree tup;
      tup.d.assign(k0.bytes.begin() + txlen, k0.bytes.end() - 2);
      Label a = tx.root();
      int alpha = k0.bytes[k0.bytes.size() - 1];
      Label bp = tup.root();
      FKey fk{a, bp, ell, c};
      const Matrix& f = cat.f_block(a, bp, ell, c);
      int frow = fblock_row_index(cat, fk, p, alpha, beta);
      auto cols = cat.fblock_cols(fk);
      for (size_t ci = 0; ci < cols.size(); ++ci) {
        Scalar coeff = f(frow, ci);
        if (std::abs(coeff) < kDropEps) continue;
        auto [q, gamma, delta] = cols[ci];
        FusionTree tu = tree_append(tup, ell, slot, q, gamma);
        acc[make_pair_key(tx, tu, c, delta)] += w * coeff;
      }
    }
    for (auto& [k, v] : acc)
      if (std::abs(v) > kDropEps) out.emplace_back(k, v);
  }
  return cache.unmerge_cache.emplace(std::move(key), std::move(out)).first->second;
}

void enumerate_rec(const CategoryPtr& cat, const Tuple& t, size_t pos, const FusionTree& acc,
                   std::vector<FusionTree>& out) {
  if (pos == t.size()) {
    out.push_back(acc);
    return;
  }
  for (auto& [l, m] : t[pos].mult)
    for (int s = 0; s < m; ++s) {
      if (pos == 0) {
        enumerate_rec(cat, t, pos + 1, make_tree({{l, s}}, {}, {}), out);
      } else {
        Label a = acc.root();
        for (Label c : cat->fusion_products(a, l))
          for (int mu = 0; mu < cat->n(a, l, c); ++mu)
            enumerate_rec(cat, t, pos + 1, tree_append(acc, l, s, c, mu), out);
      }
    }
}

}  // namespace

std::string ObjectSum::str() const {
  if (mult.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [l, m] : mult) {
    if (!first) s += "+";
    first = false;
    if (m != 1) s += std::to_string(m) + "*";
    s += cat->labels[l];
  }
  return s;
}

std::string FusionTree::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n(); ++i) {
    if (i) os << ",";
    os << leaf_label(i) << ":" << leaf_slot(i);
  }
  os << ";";
  for (int i = 1; i < n(); ++i) os << internal(i) << (i + 1 < n() ? "," : "");
  os << ";";
  for (int i = 0; i + 1 < n(); ++i) os << vertex_mult(i) << (i + 2 < n() ? "," : "");
  os << "]";
  return os.str();
}

void Morphism::add(const FusionTree& td, const FusionTree& tc, Scalar v, double drop_eps) {
  if (td.root() != tc.root()) throw error("Internal", "tree roots differ in Morphism::add");
  auto key = TreePair{td, tc};
  auto it = entries.find(key);
  if (it == entries.end()) {
    if (std::abs(v) > drop_eps) entries.emplace(std::move(key), v);
  } else {
    it->second += v;
    if (std::abs(it->second) <= drop_eps) entries.erase(it);
  }
}

Scalar Morphism::at(const FusionTree& td, const FusionTree& tc) const {
  auto it = entries.find(TreePair{td, tc});
  return it == entries.end() ? Scalar(0) : it->second;
}

Morphism& Morphism::operator*=(Scalar s) {
  for (auto& [k, v] : entries) v *= s;
  return *this;
}

Morphism Morphism::operator*(Scalar s) const {
  Morphism o = *this;
  o *= s;
  return o;
}

Morphism Morphism::operator+(const Morphism& o) const {
  Morphism out = *this;
  for (auto& [k, v] : o.entries) out.add(k.dom, k.cod, v);
  return out;
}

Morphism Morphism::operator-(const Morphism& o) const {
  Morphism out = *this;
  for (auto& [k, v] : o.entries) out.add(k.dom, k.cod, -v);
  return out;
}

double Morphism::norm_inf() const {
  double r = 0;
  for (auto& [k, v] : entries) r = std::max(r, std::abs(v));
  return r;
}

std::string Morphism::dump() const {
  std::vector<std::string> lines;
  for (auto& [k, v] : entries) {
    std::ostringstream os;
    os << k.dom.str() << " -> " << k.cod.str() << " : " << v.real();
    if (std::abs(v.imag()) > 1e-15) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    lines.push_back(os.str());
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (auto& l : lines) out += l + "\n";
  return out;
}

bool tuple_equal(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::vector<FusionTree> enumerate_trees(const CategoryPtr& cat, const Tuple& t) {
  std::vector<FusionTree> out;
  if (t.empty()) {
    out.push_back(FusionTree::empty());
    return out;
  }
  for (auto& x : t)
    if (x.is_zero()) return out;
  enumerate_rec(cat, t, 0, FusionTree::empty(), out);
  return out;
}

std::vector<FusionTree> enumerate_trees_root(const CategoryPtr& cat, const Tuple& t, Label root) {
  auto all = enumerate_trees(cat, t);
  std::vector<FusionTree> out;
  for (auto& tr : all)
    if (tr.root() == root) out.push_back(tr);
  return out;
}

Morphism identity(const CategoryPtr& cat, const Tuple& t) {
  Morphism m(cat, t, t);
  for (auto& tr : enumerate_trees(cat, t)) m.add(tr, tr, 1);
  return m;
}

Morphism zero_morphism(const CategoryPtr& cat, const Tuple& dom, const Tuple& cod) {
  return Morphism(cat, dom, cod);
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!tuple_equal(g.dom, f.cod))
    throw error("ShapeMismatch", "compose: cod(f) != dom(g)");
  Morphism out(f.cat, f.dom, g.cod);
  std::unordered_map<FusionTree, std::vector<std::pair<FusionTree, Scalar>>, TreeHash> gmap;
  for (auto& [k, v] : g.entries) gmap[k.dom].emplace_back(k.cod, v);
  for (auto& [k, v] : f.entries) {
    auto it = gmap.find(k.cod);
    if (it == gmap.end()) continue;
    for (auto& [tc, w] : it->second) out.add(k.dom, tc, v * w);
  }
  return out;
}

Morphism tensor(const Morphism& f, const Morphism& g) {
  if (f.cat != g.cat) throw error("ShapeMismatch", "tensor: different categories");
  Tuple dom = f.dom, cod = f.cod;
  dom.insert(dom.end(), g.dom.begin(), g.dom.end());
  cod.insert(cod.end(), g.cod.begin(), g.cod.end());
  Morphism out(f.cat, dom, cod);
  const auto& cat = *f.cat;
  const int nleft = int(f.cod.size());

  // pair-basis coefficients of every codomain tree
  std::unordered_map<PairKey, std::vector<std::pair<const FusionTree*, Scalar>>, PairKeyHash>
      codmap;
  auto codtrees = enumerate_trees(f.cat, cod);
  for (auto& tc : codtrees)
    for (auto& [pk, u] : unmerge(cat, tc, nleft)) codmap[pk].emplace_back(&tc, u);

  for (auto& [kf, vf] : f.entries)
    for (auto& [kg, vg] : g.entries) {
      Label a = kf.dom.root(), b = kg.dom.root();
      for (Label c : cat.fusion_products(a, b))
        for (int mu = 0; mu < cat.n(a, b, c); ++mu) {
          auto pc = make_pair_key(kf.cod, kg.cod, c, mu);
          auto cit = codmap.find(pc);
          if (cit == codmap.end()) continue;
          const SparseVec& md = merge_pair(cat, kf.dom, kg.dom, c, mu);
          for (auto& [td, w] : md)
            for (auto& [tcp, u] : cit->second) out.add(td, *tcp, w * vf * vg * u);
        }
    }
  return out;
}

Morphism tensor(const std::vector<Morphism>& fs) {
  if (fs.empty()) throw error("ShapeMismatch", "tensor of empty list");
  Morphism out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = tensor(out, fs[i]);
  return out;
}

Morphism braid(const ObjectSum& x, const ObjectSum& y, bool inverse) {
  auto cat = x.cat;
  Morphism out(cat, Tuple{x, y}, Tuple{y, x});
  for (auto& [xl, xm] : x.mult)
    for (auto& [yl, ym] : y.mult)
      for (Label k : cat->fusion_products(xl, yl)) {
        const Matrix& blk = inverse ? cat->r_block_inv(yl, xl, k) : cat->r_block(xl, yl, k);
        for (int a = 0; a < blk.rows(); ++a)
          for (int b = 0; b < blk.cols(); ++b) {
            if (std::abs(blk(a, b)) < kDropEps) continue;
            for (int s = 0; s < xm; ++s)
              for (int t = 0; t < ym; ++t) {
                FusionTree td = make_tree({{xl, s}, {yl, t}}, {k}, {a});
                FusionTree tc = make_tree({{yl, t}, {xl, s}}, {k}, {b});
                out.add(td, tc, blk(a, b));
              }
          }
      }
  return out;
}

Morphism braid_tuples(const Tuple& x, const Tuple& y, bool inverse) {
  if (x.empty() && y.empty())
    throw error("ShapeMismatch", "braid_tuples of two empty tuples");
  CategoryPtr cat = x.empty() ? y[0].cat : x[0].cat;
  Tuple cur = x;
  cur.insert(cur.end(), y.begin(), y.end());
  Morphism acc = identity(cat, cur);
  // move each X strand to the right, one adjacent transposition at a time
  for (int xi = int(x.size()) - 1; xi >= 0; --xi) {
    // strand at position xi must cross the y-strands currently at xi+1 .. xi+|y|
    for (size_t step = 0; step < y.size(); ++step) {
      int pos = xi + int(step);
      std::vector<Morphism> parts;
      for (int q = 0; q < pos; ++q) parts.push_back(identity(cat, Tuple{cur[q]}));
      parts.push_back(braid(cur[pos], cur[pos + 1], inverse));
      for (size_t q = pos + 2; q < cur.size(); ++q) parts.push_back(identity(cat, Tuple{cur[q]}));
      Morphism sigma = tensor(parts);
      std::swap(cur[pos], cur[pos + 1]);
      acc = compose(sigma, acc);
    }
  }
  return acc;
}

Morphism twist_morphism(const CategoryPtr& cat, const Tuple& t, bool inverse) {
  Morphism m(cat, t, t);
  for (auto& tr : enumerate_trees(cat, t)) {
    Scalar th = cat->theta[tr.root()];
    m.add(tr, tr, inverse ? Scalar(1.0) / th : th);
  }
  return m;
}

Morphism cup_cap(const ObjectSum& x, CupKind kind) {
  auto cat = x.cat;
  ObjectSum xd = x.dual_object();
  switch (kind) {
    case CupKind::b: {
      Morphism m(cat, Tuple{}, Tuple{x, xd});
      for (auto& [l, mm] : x.mult)
        for (int s = 0; s < mm; ++s)
          m.add(FusionTree::empty(), make_tree({{l, s}, {cat->dual_of(l), s}}, {0}, {0}), 1);
      return m;
    }
    case CupKind::d: {
      Morphism m(cat, Tuple{xd, x}, Tuple{});
      for (auto& [l, mm] : x.mult)
        for (int s = 0; s < mm; ++s)
          m.add(make_tree({{cat->dual_of(l), s}, {l, s}}, {0}, {0}), FusionTree::empty(),
                cat->cap_coeff(l));
      return m;
    }
    case CupKind::b_tilde: {
      // b~ = (id (x) theta) o c_{X,X^v} o b
      Morphism b = cup_cap(x, CupKind::b);
      Morphism c = braid(x, xd, false);
      Morphism th = tensor(identity(cat, Tuple{xd}), twist_morphism(cat, Tuple{x}, false));
      return compose(th, compose(c, b));
    }
    case CupKind::d_tilde: {
      // d~ = d o c_{X,X^v} o (theta (x) id)
      Morphism d = cup_cap(x, CupKind::d);
      Morphism c = braid(x, xd, false);
      Morphism th = tensor(twist_morphism(cat, Tuple{x}, false), identity(cat, Tuple{xd}));
      return compose(d, compose(c, th));
    }
  }
  throw error("Internal", "bad cup kind");
}

Morphism partial_trace_last(const Morphism& f) {
  if (f.dom.empty() || f.cod.empty() || !(f.dom.back() == f.cod.back()))
    throw error("ShapeMismatch", "partial_trace_last needs matching last entries");
  auto cat = f.cat;
  const ObjectSum& xn = f.dom.back();
  ObjectSum xnd = xn.dual_object();
  Tuple dom_rest(f.dom.begin(), f.dom.end() - 1);
  Tuple cod_rest(f.cod.begin(), f.cod.end() - 1);
  Morphism lhs = tensor(identity(cat, cod_rest), cup_cap(xn, CupKind::d_tilde));
  Morphism mid = tensor(f, identity(cat, Tuple{xnd}));
  Morphism rhs = tensor(identity(cat, dom_rest), cup_cap(xn, CupKind::b));
  return compose(lhs, compose(mid, rhs));
}

namespace {
Morphism partial_trace_first(const Morphism& f) {
  if (f.dom.empty() || f.cod.empty() || !(f.dom.front() == f.cod.front()))
    throw error("ShapeMismatch", "partial_trace_first needs matching first entries");
  auto cat = f.cat;
  const ObjectSum& x1 = f.dom.front();
  ObjectSum x1d = x1.dual_object();
  Tuple dom_rest(f.dom.begin() + 1, f.dom.end());
  Tuple cod_rest(f.cod.begin() + 1, f.cod.end());
  Morphism lhs = tensor(cup_cap(x1, CupKind::d), identity(cat, cod_rest));
  Morphism mid = tensor(identity(cat, Tuple{x1d}), f);
  Morphism rhs = tensor(cup_cap(x1, CupKind::b_tilde), identity(cat, dom_rest));
  return compose(lhs, compose(mid, rhs));
}
}  // namespace

Scalar trace_right(const Morphism& f) {
  Morphism cur = f;
  while (!cur.dom.empty()) cur = partial_trace_last(cur);
  return cur.at(FusionTree::empty(), FusionTree::empty());
}

Scalar trace_left(const Morphism& f) {
  Morphism cur = f;
  while (!cur.dom.empty()) cur = partial_trace_first(cur);
  return cur.at(FusionTree::empty(), FusionTree::empty());
}

Scalar trace(const Morphism& f) {
  if (!tuple_equal(f.dom, f.cod)) throw error("ShapeMismatch", "trace needs an endomorphism");
  Scalar tl = trace_left(f), tr = trace_right(f);
  double scale = std::max({1.0, std::abs(tl), std::abs(tr)});
  if (std::abs(tl - tr) > f.cat->tol.abs_eps * 100 * scale)
    throw error("TraceMismatch", "left and right traces differ: " + std::to_string(tl.real()) +
                                     " vs " + std::to_string(tr.real()));
  return tr;
}

ImageSplit image_of_idempotent(const Morphism& p) {
  if (!tuple_equal(p.dom, p.cod)) throw error("ShapeMismatch", "idempotent must be an endomorphism");
  auto cat = p.cat;
  auto trees = enumerate_trees(cat, p.dom);
  std::map<Label, std::vector<FusionTree>> by_root;
  for (auto& t : trees) by_root[t.root()].push_back(t);

  ImageSplit out;
  out.obj = ObjectSum(cat);
  out.e = Morphism(cat, Tuple{}, p.dom);   // dom filled below
  out.r = Morphism(cat, p.dom, Tuple{});
  for (auto& [c, sector] : by_root) {
    std::map<FusionTree, int> index;
    for (size_t i = 0; i < sector.size(); ++i) index[sector[i]] = int(i);
    Matrix m = Matrix::Zero(sector.size(), sector.size());
    for (auto& [k, v] : p.entries) {
      if (k.dom.root() != c) continue;
      m(index.at(k.cod), index.at(k.dom)) = v;
    }
    RankFactorization rf = rank_factorize(m, cat->tol);
    if (rf.rank == 0) continue;
    out.obj.mult[c] = int(rf.rank);
    for (Eigen::Index s = 0; s < rf.rank; ++s) {
      FusionTree leaf = make_tree({{c, int(s)}}, {}, {});
      for (size_t t = 0; t < sector.size(); ++t) {
        if (std::abs(rf.embed(t, s)) > kDropEps) out.e.add(leaf, sector[t], rf.embed(t, s));
        if (std::abs(rf.restrict_(s, t)) > kDropEps) out.r.add(sector[t], leaf, rf.restrict_(s, t));
      }
    }
  }
  out.e.dom = Tuple{out.obj};
  out.r.cod = Tuple{out.obj};
  return out;
}

ImageSplit flatten_tuple(const CategoryPtr& cat, const Tuple& t) {
  return image_of_idempotent(identity(cat, t));
}

std::vector<TreePair> hom_basis(const CategoryPtr& cat, const Tuple& dom, const Tuple& cod) {
  std::vector<TreePair> out;
  auto dts = enumerate_trees(cat, dom);
  auto cts = enumerate_trees(cat, cod);
  std::map<Label, std::vector<const FusionTree*>> cmap;
  for (auto& t : cts) cmap[t.root()].push_back(&t);
  for (auto& td : dts) {
    auto it = cmap.find(td.root());
    if (it == cmap.end()) continue;
    for (auto* tc : it->second) out.push_back(TreePair{td, *tc});
  }
  return out;
}

Morphism basis_morphism(const CategoryPtr& cat, const Tuple& dom, const Tuple& cod,
                        const TreePair& tp) {
  Morphism m(cat, dom, cod);
  m.add(tp.dom, tp.cod, 1);
  return m;
}

std::vector<Morphism> solve_morphism_space(
    const CategoryPtr& cat, const Tuple& dom, const Tuple& cod,
    const std::vector<std::function<Morphism(const Morphism&)>>& conditions) {
  auto basis = hom_basis(cat, dom, cod);
  if (basis.empty()) return {};
  struct Entry {
    int row, col;
    Scalar v;
  };
  int total_rows = 0;
  std::vector<std::unordered_map<TreePair, int, TreePairHash>> row_index(conditions.size());
  std::vector<std::vector<Entry>> cols(conditions.size());
  for (size_t bi = 0; bi < basis.size(); ++bi) {
    Morphism b = basis_morphism(cat, dom, cod, basis[bi]);
    for (size_t ci = 0; ci < conditions.size(); ++ci) {
      Morphism res = conditions[ci](b);
      for (auto& [k, v] : res.entries) {
        auto it = row_index[ci].find(k);
        int row;
        if (it == row_index[ci].end()) {
          row = int(row_index[ci].size());
          row_index[ci].emplace(k, row);
        } else {
          row = it->second;
        }
        cols[ci].push_back(Entry{row, int(bi), v});
      }
    }
  }
  std::vector<int> offset(conditions.size());
  for (size_t ci = 0; ci < conditions.size(); ++ci) {
    offset[ci] = total_rows;
    total_rows += int(row_index[ci].size());
  }
  Matrix constraint = Matrix::Zero(std::max(total_rows, 1), basis.size());
  for (size_t ci = 0; ci < conditions.size(); ++ci)
    for (auto& t : cols[ci]) constraint(offset[ci] + t.row, t.col) += t.v;

  Matrix null = solve_intertwiner_space(constraint, cat->tol);
  std::vector<Morphism> out;
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Morphism m(cat, dom, cod);
    for (size_t bi = 0; bi < basis.size(); ++bi)
      if (std::abs(null(bi, c)) > kDropEps) m.add(basis[bi].dom, basis[bi].cod, null(bi, c));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace ribcat

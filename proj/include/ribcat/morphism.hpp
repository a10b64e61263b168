#ifndef RIBCAT_MORPHISM_HPP
#define RIBCAT_MORPHISM_HPP

#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "ribcat/category.hpp"

namespace ribcat {

/// Multiplicity vector of simple objects; the semisimple decomposition of an
/// object of the category.
struct ObjectSum {
  CategoryPtr cat;
  std::map<Label, int> mult;

  ObjectSum() = default;
  explicit ObjectSum(CategoryPtr c) : cat(std::move(c)) {}
  ObjectSum(CategoryPtr c, Label l, int m = 1) : cat(std::move(c)) {
    if (m > 0) mult[l] = m;
  }
  int mult_of(Label l) const {
    auto it = mult.find(l);
    return it == mult.end() ? 0 : it->second;
  }
  bool is_zero() const { return mult.empty(); }
  double qdim() const {
    double d = 0;
    for (auto& [l, m] : mult) d += m * cat->dims[l];
    return d;
  }
  int total_mult() const {
    int d = 0;
    for (auto& [l, m] : mult) d += m;
    return d;
  }
  ObjectSum dual_object() const {
    ObjectSum o(cat);
    for (auto& [l, m] : mult) o.mult[cat->dual_of(l)] = m;
    return o;
  }
  bool operator==(const ObjectSum& o) const { return mult == o.mult; }
  bool operator!=(const ObjectSum& o) const { return !(*this == o); }
  std::string str() const;
};

using Tuple = std::vector<ObjectSum>;

/// Left-combed fusion tree over a tuple of object sums. Flat layout:
///   [n, (label,slot) x n, internals[1..n-1], vertex_mult[0..n-2]]
/// internals[0] == leaves[0].label is implied; the root of the empty tree is 0.
struct FusionTree {
  std::vector<int> d;

  static FusionTree empty() { return FusionTree{{0}}; }
  int n() const { return d[0]; }
  Label leaf_label(int i) const { return d[1 + 2 * i]; }
  int leaf_slot(int i) const { return d[2 + 2 * i]; }
  Label internal(int i) const {  // i in [0, n-1], internal(n-1) = root
    return i == 0 ? leaf_label(0) : d[1 + 2 * n() + (i - 1)];
  }
  int vertex_mult(int i) const { return d[2 * n() + n() - 1 + 1 + i]; }  // i in [0, n-2]
  Label root() const { return n() == 0 ? 0 : internal(n() - 1); }

  bool operator==(const FusionTree& o) const { return d == o.d; }
  bool operator<(const FusionTree& o) const { return d < o.d; }
  std::string str() const;
};

struct TreeHash {
  size_t operator()(const FusionTree& t) const {
    size_t h = 1469598103934665603ull;
    for (int x : t.d) {
      h ^= size_t(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct TreePair {
  FusionTree dom, cod;
  bool operator==(const TreePair& o) const { return dom == o.dom && cod == o.cod; }
};
struct TreePairHash {
  size_t operator()(const TreePair& p) const {
    return TreeHash{}(p.dom) * 1000003u ^ TreeHash{}(p.cod);
  }
};

/// Morphism between tuples of object sums, stored as a sparse scalar tensor
/// over (domain tree, codomain tree) pairs with equal root. The splitting
/// trees are the dual basis of the fusion trees, so composition contracts
/// matching middle trees directly.
class Morphism {
 public:
  CategoryPtr cat;
  Tuple dom, cod;
  std::unordered_map<TreePair, Scalar, TreePairHash> entries;

  Morphism() = default;
  Morphism(CategoryPtr c, Tuple d, Tuple co)
      : cat(std::move(c)), dom(std::move(d)), cod(std::move(co)) {}

  void add(const FusionTree& td, const FusionTree& tc, Scalar v, double drop_eps = 1e-12);
  Scalar at(const FusionTree& td, const FusionTree& tc) const;
  Morphism& operator*=(Scalar s);
  Morphism operator*(Scalar s) const;
  Morphism operator+(const Morphism& o) const;
  Morphism operator-(const Morphism& o) const;
  double norm_inf() const;
  std::string dump() const;  // sorted (tree,tree,scalar) lines for golden tests
};

bool tuple_equal(const Tuple& a, const Tuple& b);
std::vector<FusionTree> enumerate_trees(const CategoryPtr& cat, const Tuple& t);
std::vector<FusionTree> enumerate_trees_root(const CategoryPtr& cat, const Tuple& t, Label root);

Morphism identity(const CategoryPtr& cat, const Tuple& t);
Morphism zero_morphism(const CategoryPtr& cat, const Tuple& dom, const Tuple& cod);
Morphism compose(const Morphism& g, const Morphism& f);  // g after f
Morphism tensor(const Morphism& f, const Morphism& g);
Morphism tensor(const std::vector<Morphism>& fs);

/// Braiding of two object sums as a morphism (X,Y) -> (Y,X). With
/// inverse=true this is the inverse braiding (c_{Y,X})^{-1}.
Morphism braid(const ObjectSum& x, const ObjectSum& y, bool inverse = false);
/// Braiding of whole tuples, built from adjacent transpositions.
Morphism braid_tuples(const Tuple& x, const Tuple& y, bool inverse = false);

/// Twist morphism of a tuple: diagonal theta_root^{+-1}.
Morphism twist_morphism(const CategoryPtr& cat, const Tuple& t, bool inverse = false);

enum class CupKind { b, d, b_tilde, d_tilde };
/// Duality morphisms of a single object sum:
///   b : 1 -> (X, X^v),  d : (X^v, X) -> 1,
///   b~: 1 -> (X^v, X),  d~: (X, X^v) -> 1.
/// Normalized so that the zig-zag identities hold and tr(id_X) = qdim(X).
Morphism cup_cap(const ObjectSum& x, CupKind kind);

/// Trace of an endomorphism; both the left and the right trace are evaluated
/// by closing strands with duality morphisms. Throws TraceMismatch when the
/// two disagree beyond tolerance.
Scalar trace(const Morphism& f);
Scalar trace_left(const Morphism& f);
Scalar trace_right(const Morphism& f);
/// Partial trace over the last tuple entry (right closure).
Morphism partial_trace_last(const Morphism& f);

struct ImageSplit {
  ObjectSum obj;  // multiplicity at label c = rank of the root-c block
  Morphism e;     // (obj) -> dom tuple
  Morphism r;     // dom tuple -> (obj)
};
/// Split an idempotent P (dom == cod) by per-root-sector rank factorization.
ImageSplit image_of_idempotent(const Morphism& p);

/// Flattening isomorphism of a tuple onto a single object sum:
/// r o e = id_flat and e o r = id_tuple (split of the identity).
ImageSplit flatten_tuple(const CategoryPtr& cat, const Tuple& t);

/// Enumerated basis of Hom(dom, cod) as tree-pair elementary morphisms.
std::vector<TreePair> hom_basis(const CategoryPtr& cat, const Tuple& dom, const Tuple& cod);
Morphism basis_morphism(const CategoryPtr& cat, const Tuple& dom, const Tuple& cod,
                        const TreePair& tp);

/// Solve a homogeneous linear condition on Hom(dom, cod): returns a basis of
/// the subspace annihilated by all the given linear maps.
std::vector<Morphism> solve_morphism_space(
    const CategoryPtr& cat, const Tuple& dom, const Tuple& cod,
    const std::vector<std::function<Morphism(const Morphism&)>>& conditions);

}  // namespace ribcat

#endif

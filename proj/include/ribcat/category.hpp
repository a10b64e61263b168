#ifndef RIBCAT_CATEGORY_HPP
#define RIBCAT_CATEGORY_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ribcat/numerics.hpp"

namespace ribcat {

using Label = int;

/// Key of one F-block F^{ijk}_l. Rows are indexed by (p,alpha,beta) with
/// N_{ij}^p and N_{pk}^l nonzero, columns by (q,gamma,delta) with N_{jk}^q
/// and N_{iq}^l nonzero; see fblock_rows / fblock_cols.
struct FKey {
  Label i, j, k, l;
  bool operator<(const FKey& o) const {
    return std::tie(i, j, k, l) < std::tie(o.i, o.j, o.k, o.l);
  }
};

struct VertexIndex {  // one basis vector of Hom(U_a (x) U_b, U_c)
  Label a, b, c;
  int mu;
};

/// Skeletal data of a semisimple ribbon category: fusion multiplicities,
/// F-symbols (6j), R-symbols, twists and quantum dimensions. Label 0 is the
/// tensor unit; the gauge fixes every F with a unit leg to the identity.
class SkeletalCategory {
 public:
  std::string name;
  int rank = 0;
  std::vector<std::string> labels;   // display names, labels[0] = unit
  std::vector<Label> dual;           // involution, dual[0] = 0
  std::vector<int> N;                // N[(i*rank+j)*rank+k] = N_{ij}^k
  std::map<FKey, Matrix> F;          // nontrivial blocks; unit-leg blocks implied
  std::map<std::tuple<Label, Label, Label>, Matrix> R;  // braiding blocks
  std::vector<Scalar> theta;
  std::vector<double> dims;
  std::vector<Scalar> pivotal;       // per-label duality normalization, default 1
  Tolerance tol;
  int factor_rank2 = 0;              // label packing of deligne products, 0 otherwise
  uint64_t uid = next_uid();         // engine caches are keyed by this

  SkeletalCategory() = default;
  SkeletalCategory(const SkeletalCategory& o)
      : name(o.name), rank(o.rank), labels(o.labels), dual(o.dual), N(o.N), F(o.F), R(o.R),
        theta(o.theta), dims(o.dims), pivotal(o.pivotal), tol(o.tol),
        factor_rank2(o.factor_rank2), uid(next_uid()) {}
  SkeletalCategory& operator=(const SkeletalCategory&) = delete;
  static uint64_t next_uid();

  int n(Label i, Label j, Label k) const { return N[(size_t(i) * rank + j) * rank + k]; }
  Label dual_of(Label i) const { return dual[i]; }

  std::vector<Label> fusion_products(Label i, Label j) const;

  // row/column index lists of an F-block
  std::vector<std::tuple<Label, int, int>> fblock_rows(const FKey& key) const;
  std::vector<std::tuple<Label, int, int>> fblock_cols(const FKey& key) const;

  /// F-block with unit-leg blocks synthesized as identities.
  const Matrix& f_block(Label i, Label j, Label k, Label l) const;
  /// Inverse F-block (the G-symbols), cached.
  const Matrix& g_block(Label i, Label j, Label k, Label l) const;
  /// R-block for c_{i,j} on the root-k sector (N_{ij}^k x N_{ji}^k ... square).
  const Matrix& r_block(Label i, Label j, Label k) const;
  /// Inverse R-block, cached.
  const Matrix& r_block_inv(Label i, Label j, Label k) const;

  /// Cup/cap normalization: coefficient of d_x on the (dual(x),x)->0 vertex.
  /// Solved once from the zig-zag identities; includes the pivotal factor.
  Scalar cap_coeff(Label x) const;

  void check_well_formed() const;  // throws MalformedData
  void clear_caches() const;

 private:
  mutable std::mutex cache_mu_;
  mutable std::map<FKey, Matrix> f_unit_cache_;
  mutable std::map<FKey, Matrix> g_cache_;
  mutable std::map<std::tuple<Label, Label, Label>, Matrix> r_inv_cache_;
  mutable std::vector<Scalar> cap_cache_;
};

using CategoryPtr = std::shared_ptr<const SkeletalCategory>;

struct ValidationReport {
  double pentagon_residual = 0;
  double hexagon_residual = 0;
  bool unit_ok = true;
  double dim_residual = 0;
  bool twist_dual_ok = true;
  double g_inverse_residual = 0;
  double zigzag_residual = 0;
  double trace_residual = 0;
  bool passed = false;
};

ValidationReport validate(const CategoryPtr& cat);

/// s_{ij} = tr(c_{U_i,U_j} o c_{U_j,U_i}), evaluated as a ribbon diagram and
/// cross-checked against sum_k N_{ij}^k theta_k/(theta_i theta_j) dim_k.
Matrix s_matrix(const CategoryPtr& cat);

/// Twist/fusion formula for a single s-matrix entry.
Scalar s_formula(const SkeletalCategory& cat, Label i, Label j);

/// Nondegeneracy of s combined with the twist criterion: the only label k
/// with theta_s = theta_k theta_r on all fusion channels N_{rk}^s != 0 is 0.
bool is_modular(const CategoryPtr& cat);

double verify_s_squared(const CategoryPtr& cat);

struct GlobalCharges {
  double dim = 0;
  Scalar p_plus, p_minus;
};
GlobalCharges global_dim_and_charges(const CategoryPtr& cat);

CategoryPtr dual_category(const CategoryPtr& cat);
CategoryPtr deligne_product(const CategoryPtr& c1, const CategoryPtr& c2);

/// Pair (i,x) -> product label for deligne products; inverse of product_pair.
Label product_label(const SkeletalCategory& prod, Label i, Label x);
std::pair<Label, Label> product_pair(const SkeletalCategory& prod, Label p);

/// Pointed category on Z_{n1} x ... x Z_{nk} with trivial associator and
/// bilinear braiding R(a,b) = exp(2 pi i sum_uv a_u Q_uv b_v); the twist is
/// the quadratic form theta_a = R(a,a).
CategoryPtr pointed_category(const std::string& name, const std::vector<int>& orders,
                             const std::vector<std::vector<double>>& braid_exponent);

}  // namespace ribcat

#endif

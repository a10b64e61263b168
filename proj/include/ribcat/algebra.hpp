#ifndef RIBCAT_ALGEBRA_HPP
#define RIBCAT_ALGEBRA_HPP

#include <map>
#include <optional>

#include "ribcat/morphism.hpp"

namespace ribcat {

struct FlagResult {
  bool ok = false;
  double residual = 0;
};

/// Frobenius algebra (A, m, eta, delta, eps) in a ribbon category, with
/// lazily cached property flags. The counit defaults to eps_natural and the
/// coproduct to the reconstruction from the product, normalized so that
/// beta_A = 1 and beta_1 = dim(A).
struct FrobeniusAlgebra {
  CategoryPtr cat;
  ObjectSum obj;
  Morphism m;      // (A,A) -> (A)
  Morphism eta;    // () -> (A)
  Morphism delta;  // (A) -> (A,A)
  Morphism eps;    // (A) -> ()
  Scalar beta_one{0}, beta_A{0};

  mutable std::map<std::string, FlagResult> flag_cache;

  double dim() const { return obj.qdim(); }
  Tuple t1() const { return Tuple{obj}; }
  Tuple t2() const { return Tuple{obj, obj}; }
};

FlagResult check_algebra(const FrobeniusAlgebra& a);
FlagResult check_frobenius(const FrobeniusAlgebra& a);
FlagResult check_special(const FrobeniusAlgebra& a);    // also fills beta_one / beta_A
FlagResult check_symmetric(const FrobeniusAlgebra& a);
FlagResult check_commutative(const FrobeniusAlgebra& a);
FlagResult check_haploid(const FrobeniusAlgebra& a);
FlagResult check_simple(const FrobeniusAlgebra& a);     // Z~(A)_{00} = 1
FlagResult check_trivial_twist(const FrobeniusAlgebra& a);
/// commutative + symmetric + special Frobenius, the workhorse hypothesis
bool is_commutative_ssfa(const FrobeniusAlgebra& a);
bool is_ssfa(const FrobeniusAlgebra& a);

/// eps_natural = d_A o (id (x) m) o (b~_A (x) id_A)
Morphism counit_natural(const FrobeniusAlgebra& a);

/// Phi_1 = [(eps o m) (x) id_{A^v}] o (id_A (x) b_A), Phi_2 its mirror.
Morphism phi_one(const FrobeniusAlgebra& a, const Morphism& eps);
Morphism phi_two(const FrobeniusAlgebra& a, const Morphism& eps);

/// Reconstruct (delta, eps) from (m, eta): eps = eps_natural and
/// Delta = (id (x) m) o (id (x) Phi_1^{-1} (x) id) o (b_A (x) id).
/// Throws NotSpecializable when Phi_{1,natural} is singular.
void reconstruct_coproduct(FrobeniusAlgebra& a);

/// Tensor product algebra A (x)^{sign} B on the flattened object.
FrobeniusAlgebra tensor_algebra(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b,
                                int sign = +1);

FrobeniusAlgebra opposite_algebra(const FrobeniusAlgebra& a);

/// Internal-End algebra U (x) U^v with product from the duality morphisms.
FrobeniusAlgebra dual_object_algebra(const ObjectSum& u);

FrobeniusAlgebra trivial_algebra(const CategoryPtr& cat);

/// Group algebra of a fusion-closed set of invertible labels (coefficients 1).
FrobeniusAlgebra group_algebra(const CategoryPtr& cat, const std::vector<Label>& subgroup);

/// Dense per-root-sector inverse of an isomorphism between 1-tuples.
Morphism invert_iso(const Morphism& f);

}  // namespace ribcat

#endif

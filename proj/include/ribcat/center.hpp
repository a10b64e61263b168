#ifndef RIBCAT_CENTER_HPP
#define RIBCAT_CENTER_HPP

#include <Eigen/Dense>

#include "ribcat/algebra.hpp"

namespace ribcat {

enum class Side { left, right };

/// Central idempotent P^{l/r}_A = m o c^{+-1}_{A,A} o Delta.
Morphism central_idempotent(const FrobeniusAlgebra& a, Side side);

/// Local-induction idempotent P^{l/r}_A(U) on (A, U).
Morphism local_induction_idempotent(const FrobeniusAlgebra& a, const ObjectSum& u, Side side);

struct CenterResult {
  Side side;
  FrobeniusAlgebra C;
  Morphism e, r;  // embedding/restriction into A
  Morphism P;     // the central idempotent
};

/// Left/right center with the Frobenius structure of eq. (m_C, eta_C,
/// Delta_C, eps_C) at the normalization zeta = dim(C)/dim(A).
CenterResult center(const FrobeniusAlgebra& a, Side side);

struct LocalInduction {
  ObjectSum obj;
  Morphism e, r;  // retract of the 2-tuple (A, U)
};
LocalInduction local_induction_object(const FrobeniusAlgebra& a, const ObjectSum& u, Side side);

/// s_{U,A} = sum over simple constituents of the twist/fusion s-values.
Scalar s_pairing(const CategoryPtr& cat, const ObjectSum& u, const ObjectSum& a);

/// |dim E_A(U) - s_{U,A}| for commutative ssFA.
double dim_local_induction_check(const FrobeniusAlgebra& a, const ObjectSum& u);

/// Z~(A)_{ij} computed two ways (idempotent rank of E^l and bimodule
/// intertwiner count); OracleDisagreement if they differ.
Eigen::MatrixXi alpha_z_matrix(const FrobeniusAlgebra& a);

/// ||Z~(A (x)+ B) - Z~(A) Z~(B)||_max as integer matrices.
int z_multiplicativity_check(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b);

/// E^{l/r}_A(B) with the induced Frobenius structure (xi normalization
/// dim(E)/(dim A dim B)).
FrobeniusAlgebra lift_algebra_E(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b, Side side);

struct LiftedAlgebra {
  FrobeniusAlgebra alg;
  LocalInduction li;  // retract data of E inside (A, B)
};
LiftedAlgebra lift_algebra_E_full(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b, Side side);

struct TensorCenterReport {
  bool object_match_l = false, object_match_r = false;
  bool flags_match = false;
  std::string detail;
};
/// Object-level check of C_l(A (x) B) ~ E^l_A(C_l(B)) and the mirror.
TensorCenterReport tensor_center_check(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b);

}  // namespace ribcat

#endif

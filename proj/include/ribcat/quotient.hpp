#ifndef RIBCAT_QUOTIENT_HPP
#define RIBCAT_QUOTIENT_HPP

#include "ribcat/module.hpp"

namespace ribcat {

/// An algebra object in the quotient category C_A^loc, presented by ambient
/// data: the carrier is a local A-module D, the product a module morphism
/// D (x)_A D -> D, the unit a module morphism A -> D.
struct QuotientAlgebra {
  AlgebraPtr base;      // the simple commutative ssFA A defining the quotient
  AModule carrier;      // local A-module D = E_A(B)
  TensorOverA sq;       // D (x)_A D realized inside (D., D.)
  Morphism m;           // (DxD-flat) -> (D.)
  Morphism eta;         // (A.) -> (D.)
  Morphism delta;       // (D.) -> (DxD-flat)
  Morphism eps;         // (D.) -> (A.)

  Morphism m_ambient() const;  // (D., D.) -> (D.), the product with P absorbed
  double q_dim() const { return carrier.dim() / base->dim(); }
};

/// Lift of the algebra E_A(B) (built in the ambient category) to an algebra
/// in C_A^loc; li is the retract of E inside (A, B).
QuotientAlgebra lift_to_quotient(const AlgebraPtr& a, const FrobeniusAlgebra& e_ab,
                                 const LocalInduction& li);

/// Module over a quotient algebra: a local A-module M with an ambient action
/// rho_hat: (D., M.) -> (M.) satisfying rho_hat o P_{D (x) M} = rho_hat.
struct QModule {
  const QuotientAlgebra* qa = nullptr;
  AModule mod;
  Morphism rho_hat;
  mutable std::optional<bool> simple_cache, local_cache;
};

bool check_qmodule(const QModule& m, double* residual = nullptr);
QModule q_induced_module(const QuotientAlgebra& qa, const AModule& m);
QModule q_regular_module(const QuotientAlgebra& qa);
std::vector<Morphism> q_hom_module(const QModule& m1, const QModule& m2);
int q_hom_module_dim(const QModule& m1, const QModule& m2);
std::vector<QModule> q_enumerate_simple_modules(const QuotientAlgebra& qa);
bool q_is_local(const QModule& m);

struct QTensor {
  QModule mod;
  Morphism e, r;  // retract of the 2-tuple (M1., M2.)
};
QTensor q_tensor_over(const QModule& m1, const QModule& m2);

/// Full ribbon summary of (C_A^loc)^loc_{B~}, computed with quotient-level
/// operations only (tensor over A, quotient braiding, ambient twist).
QuotientSummary q_quotient_summary(const QuotientAlgebra& qa);

}  // namespace ribcat

#endif

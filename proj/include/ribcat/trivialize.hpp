#ifndef RIBCAT_TRIVIALIZE_HPP
#define RIBCAT_TRIVIALIZE_HPP

#include "ribcat/module.hpp"

namespace ribcat {

/// The trivializing algebra T = (+)_k U_k x U_k~ in g (x) dual(g), with the
/// vertex-diagonal product. NotModular when g is not modular.
struct Trivialization {
  CategoryPtr g;
  CategoryPtr product;  // g (x) dual(g)
  FrobeniusAlgebra T;
};
Trivialization build_trivializing_algebra(const CategoryPtr& g);

/// Build T inside an existing product category whose two factors are dual to
/// each other (object (+)_k (k,k), coefficient-1 product).
FrobeniusAlgebra build_trivializing_algebra_in(const CategoryPtr& product);

struct TrivializationReport {
  int n_simple_modules = 0;
  int n_local = 0;
  bool ind_decomposition_ok = false;  // Ind(U_k x U_l~) = (+)_r N_{kr}^{l} M_r
  int quotient_rank = 0;
  double dim_loc = 0;
  bool passed = false;
  std::string detail;
};
TrivializationReport verify_trivialization(const CategoryPtr& g);

}  // namespace ribcat

#endif

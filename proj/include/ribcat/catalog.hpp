#ifndef RIBCAT_CATALOG_HPP
#define RIBCAT_CATALOG_HPP

#include "ribcat/algebra.hpp"

namespace ribcat {

/// Built-in categories. Keys: vec, toric_code, fibonacci, ising, z3, z4,
/// fermion, plus the derived forms dual(<key>) and prod(<key>,<key>).
/// Every entry is validated at load; ValidationFailed on residuals.
CategoryPtr load_builtin(const std::string& key, const Tolerance& tol = Tolerance());

/// Built-in algebras: trivial, simple_current:<label,label,...>,
/// dual_object:<label>, T_G (over a category of the form prod(g,dual(g))).
FrobeniusAlgebra load_builtin_algebra(const CategoryPtr& cat, const std::string& alg_key);

std::vector<std::string> builtin_keys();

/// Resolve a label by display name or numeric index.
Label resolve_label(const SkeletalCategory& cat, const std::string& name);

std::string data_dir();

}  // namespace ribcat

#endif

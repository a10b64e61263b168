#ifndef RIBCAT_IO_HPP
#define RIBCAT_IO_HPP

#include <string>

#include "ribcat/category.hpp"
#include "ribcat/morphism.hpp"

namespace ribcat {

struct FrobeniusAlgebra;

/// Category file format (JSON, UTF-8):
///   {"version":1, "name":str, "labels":[str], "dual":[int],
///    "N":[[i,j,k,mult]], "F":[[i,j,k,l,p,q,a,b,g,d,re,im]],
///    "R":[[i,j,k,a,b,re,im]], "theta":[[re,im]], "dims":[real],
///    "pivotal":[[re,im]]?}
/// Absent F/R entries are 0; entries with a unit leg are fixed by the gauge
/// (identity) and may be omitted. Indices are 0-based, label 0 is the unit.
CategoryPtr load_category_json(const std::string& text, const Tolerance& tol = Tolerance());
CategoryPtr load_category_file(const std::string& path, const Tolerance& tol = Tolerance());
std::string save_category_json(const SkeletalCategory& cat);

/// Algebra file format (JSON):
///   {"object":[[label,mult]], "m":[[treeDom,treeCod,re,im]], "eta":[...],
///    "delta":[...]?, "eps":[...]?}
/// Trees are flat index lists [n, label0,slot0,...,internals...,mults...].
FrobeniusAlgebra load_algebra_json(const std::string& text, const CategoryPtr& cat);
FrobeniusAlgebra load_algebra_file(const std::string& path, const CategoryPtr& cat);
std::string save_algebra_json(const FrobeniusAlgebra& alg);

std::string read_text_file(const std::string& path);

struct QuotientSummary;
struct CosetReport;

/// QuotientSummary serialization for golden-file regression tests.
std::string summary_to_json(const QuotientSummary& s);
/// CosetReport serialization with every residual and witness included.
std::string coset_report_to_json(const CosetReport& r);

/// Opt-in worker count for embarrassingly parallel inner loops.
void set_threads(int n);
int thread_count();

}  // namespace ribcat

#endif

#ifndef RIBCAT_COSET_HPP
#define RIBCAT_COSET_HPP

#include "ribcat/quotient.hpp"
#include "ribcat/trivialize.hpp"

namespace ribcat {

/// Q-haploidity: the only retract of L of the form U x 1_H is the unit.
bool check_Q_haploid(const CategoryPtr& qh, const FrobeniusAlgebra& l);

/// Separability in the semisimple setting: no simple label of dimension 0.
struct SeparabilityReport {
  bool separable = true;
  Label witness = -1;
};
SeparabilityReport check_separable(const CategoryPtr& cat);

struct CosetReport {
  // flags of L
  bool l_is_cssfa = false;
  bool q_haploid = false;
  bool separable = false;
  // stage results
  QuotientSummary g_summary;                      // G = (Q x H)^loc_L
  std::map<std::pair<int, Label>, int> lprime;    // object of L' in G x H~ labels
  double lprime_dim = 0;
  bool lprime_flags_ok = false;
  double gamma_trace_residual = 0;                // |tr P_{C_l} - dim T|
  bool gamma_trivial = false;                     // E_{1xT}(Lx1) ~ 1xT as retracts
  double dim_relation_residual = 0;               // |dim L * dim L' - Dim H|
  SummaryMatch equivalence;                       // Q vs (G x H~)^loc_{L'}
  bool modular_transfer_ok = true;                // cor:modular spot check
  bool passed = false;
  std::string detail;
};

/// Full coset pipeline for modular H: builds the triple product Q x H x H~,
/// verifies the hypotheses, constructs L' and compares the closing summary
/// with Q. PreconditionFailed names the violated hypothesis.
CosetReport coset_pipeline(const CategoryPtr& q, const CategoryPtr& h,
                           const FrobeniusAlgebra& l);

}  // namespace ribcat

#endif

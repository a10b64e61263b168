// ribcat: computations with symmetric special Frobenius algebras in skeletal
// ribbon categories. Verbs orchestrate the library pipelines and emit
// residual-bearing reports; exit 0 all-pass, 1 mathematical failure, 2 usage.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ribcat/catalog.hpp"
#include "ribcat/coset.hpp"
#include "ribcat/io.hpp"
#include "ribcat/quotient.hpp"
#include "ribcat/report.hpp"
#include "ribcat/trivialize.hpp"

using namespace ribcat;

namespace {

CategoryPtr resolve_category(const std::string& spec, const Tolerance& tol) {
  if (spec.rfind("builtin:", 0) == 0) return load_builtin(spec.substr(8), tol);
  if (spec.rfind("file:", 0) == 0) return load_category_file(spec.substr(5), tol);
  throw error("Usage", "category spec must be builtin:<key> or file:<path>");
}

FrobeniusAlgebra resolve_algebra(const std::string& spec, const CategoryPtr& cat) {
  if (spec.rfind("builtin:", 0) == 0) return load_builtin_algebra(cat, spec.substr(8));
  if (spec.rfind("file:", 0) == 0) return load_algebra_file(spec.substr(5), cat);
  throw error("Usage", "algebra spec must be builtin:<key> or file:<path>");
}

void finish(RunReport& rep, const std::string& json_path, int& exit_code) {
  print_report(rep);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << report_to_json(rep) << "\n";
  }
  exit_code = rep.all_passed() ? 0 : 1;
}

std::string fmt_scalar(Scalar v) {
  std::ostringstream os;
  os << v.real();
  if (std::abs(v.imag()) > 1e-12) os << (v.imag() >= 0 ? "+" : "") << v.imag() << "i";
  return os.str();
}

void print_summary(const QuotientSummary& s) {
  std::cout << "  quotient rank " << s.dims_A.size() << ", Dim_loc " << s.dim_loc;
  if (s.modular_claimed) std::cout << (s.modular ? ", modular" : ", not modular");
  std::cout << "\n";
  for (size_t i = 0; i < s.dims_A.size(); ++i)
    std::cout << "  simple " << i << ": carrier " << s.simples[i].mdot.str() << ", dim_A "
              << s.dims_A[i] << ", twist " << fmt_scalar(s.twists_A[i]) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ribbon-category Frobenius algebra calculator"};
  app.require_subcommand(1);

  std::string cat_spec, alg_spec, q_spec, h_spec, l_spec, json_path;
  double tol_override = 0;
  int threads = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol_override, "override abs/rel tolerance");
    sub->add_option("--json", json_path, "write the full report to this path");
    sub->add_option("--threads", threads, "worker threads for inner loops");
  };
  auto add_cat = [&](CLI::App* sub) {
    sub->add_option("--category", cat_spec, "builtin:<key> or file:<path>")->required();
  };
  auto add_alg = [&](CLI::App* sub) {
    sub->add_option("--algebra", alg_spec, "builtin:<key> or file:<path>")->required();
  };

  auto* v = app.add_subcommand("validate", "pentagon/hexagon/unit/dim/twist axioms");
  add_common(v);
  add_cat(v);
  auto* sm = app.add_subcommand("smatrix", "s-matrix by diagram evaluation with formula cross-check");
  add_common(sm);
  add_cat(sm);
  auto* ac = app.add_subcommand("algebra-check", "Frobenius algebra property flags");
  add_common(ac);
  add_cat(ac);
  add_alg(ac);
  auto* ce = app.add_subcommand("centers", "left/right centers and the equivalence comparator");
  add_common(ce);
  add_cat(ce);
  add_alg(ce);
  auto* az = app.add_subcommand("alpha-z", "alpha-induction multiplicity matrix, both oracles");
  add_common(az);
  add_cat(az);
  add_alg(az);
  auto* lm = app.add_subcommand("local-modules", "simple modules, locality, quotient summary");
  add_common(lm);
  add_cat(lm);
  add_alg(lm);
  auto* tv = app.add_subcommand("trivialize", "T_G construction and trivialization checks");
  add_common(tv);
  add_cat(tv);
  auto* co = app.add_subcommand("coset", "full coset correspondence pipeline");
  add_common(co);
  co->add_option("--Q", q_spec, "the category Q")->required();
  co->add_option("--H", h_spec, "the modular category H")->required();
  co->add_option("--L", l_spec, "algebra in Q x H (builtin:T for the trivializing algebra)")
      ->required();
  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  add_common(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Tolerance tol;
  if (tol_override > 0) {
    tol.abs_eps = tol_override;
    tol.rel_eps = tol_override;
  }
  set_threads(threads);

  int exit_code = 0;
  try {
    if (v->parsed()) {
      auto cat = resolve_category(cat_spec, tol);
      ValidationReport r = validate(cat);
      RunReport rep;
      rep.command = "validate";
      rep.add("pentagon", r.pentagon_residual <= tol.abs_eps, r.pentagon_residual);
      rep.add("hexagon", r.hexagon_residual <= tol.abs_eps, r.hexagon_residual);
      rep.add("unit gauge", r.unit_ok);
      rep.add("dimension recursion", r.dim_residual <= tol.abs_eps * 10, r.dim_residual);
      rep.add("twist/dual symmetry", r.twist_dual_ok);
      rep.add("G inverse of F", r.g_inverse_residual <= tol.abs_eps, r.g_inverse_residual);
      rep.add("zig-zag identities", r.zigzag_residual <= tol.abs_eps, r.zigzag_residual);
      rep.add("trace normalization", r.trace_residual <= tol.abs_eps * 10, r.trace_residual);
      finish(rep, json_path, exit_code);
    } else if (sm->parsed()) {
      auto cat = resolve_category(cat_spec, tol);
      Matrix s = s_matrix(cat);
      std::cout << "s-matrix of " << cat->name << " (diagram evaluation):\n";
      for (Label i = 0; i < cat->rank; ++i) {
        std::cout << "  ";
        for (Label j = 0; j < cat->rank; ++j) std::cout << fmt_scalar(s(i, j)) << "\t";
        std::cout << "\n";
      }
      RunReport rep;
      rep.command = "smatrix";
      double worst = 0;
      for (Label i = 0; i < cat->rank; ++i)
        for (Label j = 0; j < cat->rank; ++j)
          worst = std::max(worst, std::abs(s(i, j) - s_formula(*cat, i, j)));
      rep.add("diagram vs twist/fusion formula", worst <= tol.abs_eps, worst);
      try {
        rep.add("modular", is_modular(cat));
      } catch (const error& e) {
        rep.add("modular", false, 0, e.what());
      }
      finish(rep, json_path, exit_code);
    } else if (ac->parsed()) {
      auto cat = resolve_category(cat_spec, tol);
      auto alg = resolve_algebra(alg_spec, cat);
      RunReport rep;
      rep.command = "algebra-check";
      auto put = [&](const std::string& name, FlagResult f) { rep.add(name, f.ok, f.residual); };
      put("algebra", check_algebra(alg));
      put("frobenius", check_frobenius(alg));
      put("special", check_special(alg));
      put("symmetric", check_symmetric(alg));
      put("commutative", check_commutative(alg));
      put("haploid", check_haploid(alg));
      put("simple", check_simple(alg));
      put("trivial twist", check_trivial_twist(alg));
      std::cout << "object " << alg.obj.str() << ", dim " << alg.dim() << ", beta_1 "
                << fmt_scalar(alg.beta_one) << ", beta_A " << fmt_scalar(alg.beta_A) << "\n";
      finish(rep, json_path, exit_code);
    } else if (ce->parsed()) {
      auto cat = resolve_category(cat_spec, tol);
      auto alg = resolve_algebra(alg_spec, cat);
      CenterResult cl = center(alg, Side::left);
      CenterResult cr = center(alg, Side::right);
      std::cout << "C_l(A) = " << cl.C.obj.str() << ", C_r(A) = " << cr.C.obj.str() << "\n";
      EquivReport er = verify_thm_equiv(alg);
      std::cout << "left quotient:\n";
      print_summary(er.left);
      std::cout << "right quotient:\n";
      print_summary(er.right);
      RunReport rep;
      rep.command = "centers";
      rep.add("centers commutative+symmetric",
              check_commutative(cl.C).ok && check_symmetric(cl.C).ok &&
                  check_commutative(cr.C).ok && check_symmetric(cr.C).ok);
      rep.add("summaries match up to permutation", er.match.matched, 0, er.match.detail);
      finish(rep, json_path, exit_code);
    } else if (az->parsed()) {
      auto cat = resolve_category(cat_spec, tol);
      auto alg = resolve_algebra(alg_spec, cat);
      auto z = alpha_z_matrix(alg);
      std::cout << "Z~(A) (both oracles agree):\n" << z << "\n";
      RunReport rep;
      rep.command = "alpha-z";
      rep.add("rank and intertwiner oracles agree", true, 0, "Z00=" + std::to_string(z(0, 0)));
      finish(rep, json_path, exit_code);
    } else if (lm->parsed()) {
      auto cat = resolve_category(cat_spec, tol);
      auto alg = std::make_shared<FrobeniusAlgebra>(resolve_algebra(alg_spec, cat));
      auto simples = enumerate_simple_modules(alg);
      int n_local = 0;
      std::cout << "simple modules over A = " << alg->obj.str() << ":\n";
      for (auto& s : simples) {
        bool loc = is_local(s);
        n_local += loc;
        std::cout << "  " << s.mdot.str() << "  dim " << s.dim() << (loc ? "  local" : "") << "\n";
      }
      QuotientSummary qs = quotient_summary(alg);
      std::cout << "quotient summary:\n";
      print_summary(qs);
      RunReport rep;
      rep.command = "local-modules";
      rep.add("module decomposition", true, 0,
              std::to_string(simples.size()) + " simples, " + std::to_string(n_local) + " local");
      rep.add("quotient s-matrix double oracle", true, 0,
              "rank " + std::to_string(qs.dims_A.size()));
      if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << summary_to_json(qs) << "\n";
        json_path.clear();
      }
      finish(rep, json_path, exit_code);
    } else if (tv->parsed()) {
      auto cat = resolve_category(cat_spec, tol);
      TrivializationReport r = verify_trivialization(cat);
      RunReport rep;
      rep.command = "trivialize";
      rep.add("simple T-modules = rank", r.n_simple_modules == cat->rank, 0,
              std::to_string(r.n_simple_modules));
      rep.add("induced decomposition multiplicities", r.ind_decomposition_ok, 0, r.detail);
      rep.add("exactly one local module", r.n_local == 1, 0, std::to_string(r.n_local));
      rep.add("quotient rank 1", r.quotient_rank == 1);
      rep.add("Dim_loc = 1", std::abs(r.dim_loc - 1) <= tol.abs_eps, std::abs(r.dim_loc - 1));
      finish(rep, json_path, exit_code);
    } else if (co->parsed()) {
      auto q = resolve_category(q_spec, tol);
      auto h = resolve_category(h_spec, tol);
      auto qh = deligne_product(q, h);
      FrobeniusAlgebra l = (l_spec == "builtin:T" || l_spec == "builtin:T_G")
                               ? build_trivializing_algebra_in(qh)
                               : resolve_algebra(l_spec, qh);
      CosetReport r = coset_pipeline(q, h, l);
      RunReport rep;
      rep.command = "coset";
      rep.add("L haploid commutative ssFA", r.l_is_cssfa);
      rep.add("L is Q-haploid", r.q_haploid);
      rep.add("products separable", r.separable);
      rep.add("G summary", true, 0, "rank " + std::to_string(r.g_summary.dims_A.size()));
      rep.add("Gamma trace identity tr P = dim T", r.gamma_trivial, r.gamma_trace_residual);
      rep.add("L' flags (haploid commutative ssFA)", r.lprime_flags_ok, 0,
              "dim L' = " + std::to_string(r.lprime_dim));
      rep.add("dim(L) dim(L') = Dim(H)", r.dim_relation_residual <= tol.abs_eps,
              r.dim_relation_residual);
      rep.add("closing comparator Q = (G x H~)^loc_{L'}", r.equivalence.matched, 0,
              r.equivalence.detail);
      rep.add("modularity transfer", r.modular_transfer_ok);
      if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << coset_report_to_json(r) << "\n";
        json_path.clear();
      }
      finish(rep, json_path, exit_code);
    } else if (st->parsed()) {
      RunReport rep = run_acceptance(tol, true);
      if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << report_to_json(rep) << "\n";
      }
      exit_code = rep.all_passed() ? 0 : 1;
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool usage = e.code() == "Usage" || e.code() == "UnknownKey" || e.code() == "IoError" ||
                 e.code() == "MalformedData" || e.code() == "IncompatibleKeys";
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

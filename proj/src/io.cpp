#include "ribcat/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ribcat/algebra.hpp"
#include "ribcat/coset.hpp"

#include <atomic>

namespace ribcat {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("IoError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CategoryPtr load_category_json(const std::string& text, const Tolerance& tol) {
  json j = json::parse(text);
  if (j.value("version", 0) != 1) throw error("MalformedData", "unsupported category file version");
  auto out = std::make_shared<SkeletalCategory>();
  out->tol = tol;
  out->name = j.value("name", "unnamed");
  out->labels = j.at("labels").get<std::vector<std::string>>();
  out->rank = int(out->labels.size());
  out->dual = j.at("dual").get<std::vector<Label>>();
  out->N.assign(size_t(out->rank) * out->rank * out->rank, 0);
  for (auto& e : j.at("N")) {
    int i = e[0], jj = e[1], k = e[2], m = e[3];
    if (i < 0 || i >= out->rank || jj < 0 || jj >= out->rank || k < 0 || k >= out->rank)
      throw error("MalformedData", "N index out of range");
    out->N[(size_t(i) * out->rank + jj) * out->rank + k] = m;
  }
  if (j.contains("F"))
    for (auto& e : j.at("F")) {
      FKey key{e[0], e[1], e[2], e[3]};
      Label p = e[4], q = e[5];
      int a = e[6], b = e[7], g = e[8], d = e[9];
      double re = e[10], im = e[11];
      auto rows = out->fblock_rows(key);
      auto cols = out->fblock_cols(key);
      auto& blk = out->F[key];
      if (blk.rows() == 0) blk = Matrix::Zero(rows.size(), cols.size());
      int ri = -1, ci = -1;
      for (size_t r = 0; r < rows.size(); ++r)
        if (rows[r] == std::make_tuple(p, a, b)) ri = int(r);
      for (size_t c = 0; c < cols.size(); ++c)
        if (cols[c] == std::make_tuple(q, g, d)) ci = int(c);
      if (ri < 0 || ci < 0) throw error("MalformedData", "F entry index not admissible");
      blk(ri, ci) = Scalar(re, im);
    }
  if (j.contains("R"))
    for (auto& e : j.at("R")) {
      Label i = e[0], jj = e[1], k = e[2];
      int a = e[3], b = e[4];
      double re = e[5], im = e[6];
      auto& blk = out->R[{i, jj, k}];
      if (blk.rows() == 0) blk = Matrix::Zero(out->n(i, jj, k), out->n(jj, i, k));
      if (a >= blk.rows() || b >= blk.cols())
        throw error("MalformedData", "R entry index not admissible");
      blk(a, b) = Scalar(re, im);
    }
  out->theta.clear();
  for (auto& e : j.at("theta")) out->theta.emplace_back(double(e[0]), double(e[1]));
  out->dims = j.at("dims").get<std::vector<double>>();
  out->pivotal.assign(out->rank, Scalar(1));
  if (j.contains("pivotal")) {
    out->pivotal.clear();
    for (auto& e : j.at("pivotal")) out->pivotal.emplace_back(double(e[0]), double(e[1]));
  }
  out->check_well_formed();
  return out;
}

CategoryPtr load_category_file(const std::string& path, const Tolerance& tol) {
  return load_category_json(read_text_file(path), tol);
}

std::string save_category_json(const SkeletalCategory& cat) {
  json j;
  j["version"] = 1;
  j["name"] = cat.name;
  j["labels"] = cat.labels;
  j["dual"] = cat.dual;
  json n = json::array();
  for (Label i = 0; i < cat.rank; ++i)
    for (Label jj = 0; jj < cat.rank; ++jj)
      for (Label k = 0; k < cat.rank; ++k)
        if (cat.n(i, jj, k)) n.push_back({i, jj, k, cat.n(i, jj, k)});
  j["N"] = n;
  json f = json::array();
  for (auto& [key, blk] : cat.F) {
    auto rows = cat.fblock_rows(key);
    auto cols = cat.fblock_cols(key);
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t c = 0; c < cols.size(); ++c) {
        Scalar v = blk(r, c);
        if (std::abs(v) < 1e-15) continue;
        auto [p, a, b] = rows[r];
        auto [q, g, d] = cols[c];
        f.push_back({key.i, key.j, key.k, key.l, p, q, a, b, g, d, v.real(), v.imag()});
      }
  }
  j["F"] = f;
  json r = json::array();
  for (auto& [key, blk] : cat.R) {
    auto [i, jj, k] = key;
    for (int a = 0; a < blk.rows(); ++a)
      for (int b = 0; b < blk.cols(); ++b) {
        Scalar v = blk(a, b);
        if (std::abs(v) < 1e-15) continue;
        r.push_back({i, jj, k, a, b, v.real(), v.imag()});
      }
  }
  j["R"] = r;
  json th = json::array();
  for (auto& t : cat.theta) th.push_back({t.real(), t.imag()});
  j["theta"] = th;
  j["dims"] = cat.dims;
  json pv = json::array();
  for (auto& p : cat.pivotal) pv.push_back({p.real(), p.imag()});
  j["pivotal"] = pv;
  return j.dump(1);
}

namespace {

json tree_to_json(const FusionTree& t) { return json(t.d); }

FusionTree tree_from_json(const json& j) {
  FusionTree t;
  t.d = j.get<std::vector<int>>();
  return t;
}

json morphism_entries(const Morphism& m) {
  json out = json::array();
  std::vector<std::pair<TreePair, Scalar>> sorted(m.entries.begin(), m.entries.end());
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) {
    return std::tie(a.first.dom.d, a.first.cod.d) < std::tie(b.first.dom.d, b.first.cod.d);
  });
  for (auto& [k, v] : sorted)
    out.push_back({tree_to_json(k.dom), tree_to_json(k.cod), v.real(), v.imag()});
  return out;
}

void entries_from_json(const json& j, Morphism& m) {
  for (auto& e : j)
    m.add(tree_from_json(e[0]), tree_from_json(e[1]), Scalar(double(e[2]), double(e[3])));
}

}  // namespace

FrobeniusAlgebra load_algebra_json(const std::string& text, const CategoryPtr& cat) {
  json j = json::parse(text);
  FrobeniusAlgebra a;
  a.cat = cat;
  a.obj = ObjectSum(cat);
  for (auto& e : j.at("object")) {
    Label l = e[0];
    int mm = e[1];
    if (l < 0 || l >= cat->rank) throw error("MalformedData", "algebra label out of range");
    if (mm > 0) a.obj.mult[l] = mm;
  }
  a.m = Morphism(cat, a.t2(), a.t1());
  entries_from_json(j.at("m"), a.m);
  a.eta = Morphism(cat, Tuple{}, a.t1());
  entries_from_json(j.at("eta"), a.eta);
  if (j.contains("delta") && j.contains("eps")) {
    a.delta = Morphism(cat, a.t1(), a.t2());
    entries_from_json(j.at("delta"), a.delta);
    a.eps = Morphism(cat, a.t1(), Tuple{});
    entries_from_json(j.at("eps"), a.eps);
  } else {
    reconstruct_coproduct(a);
  }
  return a;
}

FrobeniusAlgebra load_algebra_file(const std::string& path, const CategoryPtr& cat) {
  return load_algebra_json(read_text_file(path), cat);
}

namespace {
std::atomic<int> g_threads{1};
}

void set_threads(int n) { g_threads = std::max(1, n); }
int thread_count() { return g_threads; }

std::string summary_to_json(const QuotientSummary& s) {
  nlohmann::json j;
  j["rank"] = s.dims_A.size();
  j["dims"] = s.dims_A;
  nlohmann::json tw = nlohmann::json::array();
  for (auto& t : s.twists_A) tw.push_back({t.real(), t.imag()});
  j["twists"] = tw;
  j["fusion"] = s.fusion;
  nlohmann::json sm = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.s_A.rows(); ++i)
    for (Eigen::Index k = 0; k < s.s_A.cols(); ++k)
      sm.push_back({i, k, s.s_A(i, k).real(), s.s_A(i, k).imag()});
  j["s"] = sm;
  j["dim_loc"] = s.dim_loc;
  j["p_plus"] = {s.p_plus_loc.real(), s.p_plus_loc.imag()};
  j["p_minus"] = {s.p_minus_loc.real(), s.p_minus_loc.imag()};
  j["modular_claimed"] = s.modular_claimed;
  j["modular"] = s.modular;
  nlohmann::json objs = nlohmann::json::array();
  for (auto& m : s.simples) objs.push_back(m.mdot.str());
  j["simples"] = objs;
  return j.dump(1);
}

std::string coset_report_to_json(const CosetReport& r) {
  nlohmann::json j;
  j["passed"] = r.passed;
  j["l_is_cssfa"] = r.l_is_cssfa;
  j["q_haploid"] = r.q_haploid;
  j["separable"] = r.separable;
  j["g_summary"] = nlohmann::json::parse(summary_to_json(r.g_summary));
  nlohmann::json lp = nlohmann::json::array();
  for (auto& [kl, mult] : r.lprime) lp.push_back({kl.first, kl.second, mult});
  j["lprime_object"] = lp;
  j["lprime_dim"] = r.lprime_dim;
  j["lprime_flags_ok"] = r.lprime_flags_ok;
  j["gamma_trace_residual"] = r.gamma_trace_residual;
  j["gamma_trivial"] = r.gamma_trivial;
  j["dim_relation_residual"] = r.dim_relation_residual;
  j["equivalence_matched"] = r.equivalence.matched;
  j["equivalence_permutation"] = r.equivalence.permutation;
  j["modular_transfer_ok"] = r.modular_transfer_ok;
  j["detail"] = r.detail + r.equivalence.detail;
  return j.dump(1);
}

std::string save_algebra_json(const FrobeniusAlgebra& alg) {
  json j;
  json obj = json::array();
  for (auto& [l, mm] : alg.obj.mult) obj.push_back({l, mm});
  j["object"] = obj;
  j["m"] = morphism_entries(alg.m);
  j["eta"] = morphism_entries(alg.eta);
  j["delta"] = morphism_entries(alg.delta);
  j["eps"] = morphism_entries(alg.eps);
  return j.dump(1);
}

}  // namespace ribcat

#include "ribcat/catalog.hpp"

#include <cstdlib>

#include "ribcat/io.hpp"
#include "ribcat/trivialize.hpp"

namespace ribcat {

std::string data_dir() {
  if (const char* env = std::getenv("RIBCAT_DATA_DIR")) return env;
#ifdef RIBCAT_DATA_DIR
  return RIBCAT_DATA_DIR;
#else
  return "data";
#endif
}

std::vector<std::string> builtin_keys() {
  return {"vec", "toric_code", "fibonacci", "ising", "z3", "z4", "fermion"};
}

namespace {

CategoryPtr load_base(const std::string& key, const Tolerance& tol) {
  if (key == "vec") return pointed_category("vec", {1}, {{0.0}});
  if (key == "z3") return pointed_category("z3", {3}, {{1.0 / 3.0}});
  if (key == "z4") return pointed_category("z4", {4}, {{1.0 / 4.0}});
  if (key == "fermion") return pointed_category("fermion", {2}, {{0.5}});
  if (key == "toric_code")
    return pointed_category("toric_code", {2, 2}, {{0.0, 0.5}, {0.0, 0.0}});
  if (key == "fibonacci" || key == "ising")
    return load_category_file(data_dir() + "/" + key + ".json", tol);
  throw error("UnknownKey", "unknown builtin category " + key);
}

std::vector<std::string> split_args(const std::string& s) {
  // split a comma-separated list at top level (respecting parentheses)
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

CategoryPtr load_builtin(const std::string& key, const Tolerance& tol) {
  CategoryPtr cat;
  if (key.rfind("dual(", 0) == 0 && key.back() == ')') {
    cat = dual_category(load_builtin(key.substr(5, key.size() - 6), tol));
  } else if (key.rfind("prod(", 0) == 0 && key.back() == ')') {
    auto args = split_args(key.substr(5, key.size() - 6));
    if (args.size() != 2) throw error("UnknownKey", "prod(...) needs two arguments");
    cat = deligne_product(load_builtin(args[0], tol), load_builtin(args[1], tol));
  } else if (key == "ising_dual") {
    cat = dual_category(load_builtin("ising", tol));
  } else if (key == "fibonacci_dual") {
    cat = dual_category(load_builtin("fibonacci", tol));
  } else {
    cat = load_base(key, tol);
  }
  auto mut = std::const_pointer_cast<SkeletalCategory>(cat);
  mut->tol = tol;
  // base entries are validated on load; derived ones are validated in tests
  // (a full pentagon sweep over large products is quadratic in rank^4)
  if (cat->rank <= 9) {
    ValidationReport rep = validate(cat);
    if (!rep.passed)
      throw error("ValidationFailed", "builtin category " + key + " failed validation");
  }
  return cat;
}

Label resolve_label(const SkeletalCategory& cat, const std::string& name) {
  for (Label l = 0; l < cat.rank; ++l)
    if (cat.labels[l] == name) return l;
  try {
    size_t pos = 0;
    int v = std::stoi(name, &pos);
    if (pos == name.size() && v >= 0 && v < cat.rank) return v;
  } catch (...) {
  }
  throw error("UnknownKey", "no label named '" + name + "' in " + cat.name);
}

FrobeniusAlgebra load_builtin_algebra(const CategoryPtr& cat, const std::string& alg_key) {
  if (alg_key == "trivial") return trivial_algebra(cat);
  if (alg_key.rfind("simple_current:", 0) == 0) {
    auto names = split_args(alg_key.substr(15));
    std::vector<Label> ls;
    for (auto& n : names)
      if (!n.empty()) ls.push_back(resolve_label(*cat, n));
    return group_algebra(cat, ls);
  }
  if (alg_key.rfind("dual_object:", 0) == 0) {
    Label l = resolve_label(*cat, alg_key.substr(12));
    return dual_object_algebra(ObjectSum(cat, l));
  }
  if (alg_key == "T_G" || alg_key == "T") {
    return build_trivializing_algebra_in(cat);
  }
  throw error("UnknownKey", "unknown builtin algebra " + alg_key);
}

}  // namespace ribcat

// momentkit command line front end. Talks to the library exclusively through
// the C interface in momentkit/momentkit.h.
//
// Exit status: 0 all checks pass, 1 a mathematical check failed, 2 usage or
// input error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "momentkit/momentkit.h"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(mk_status s, const std::string& context) {
  if (s != MK_OK) {
    throw InputError(context + ": " + mk_status_name(s) + ": " + mk_last_error());
  }
}

struct PolyDeleter {
  void operator()(mk_poly* p) const { mk_poly_free(p); }
};
struct MomentsDeleter {
  void operator()(mk_moments* p) const { mk_moments_free(p); }
};
struct ReportDeleter {
  void operator()(mk_report* p) const { mk_report_free(p); }
};
struct OperatorDeleter {
  void operator()(mk_operator* p) const { mk_operator_free(p); }
};
struct CMomentsDeleter {
  void operator()(mk_cmoments* p) const { mk_cmoments_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { mk_string_free(p); }
};

using Poly = std::unique_ptr<mk_poly, PolyDeleter>;
using Moments = std::unique_ptr<mk_moments, MomentsDeleter>;
using Report = std::unique_ptr<mk_report, ReportDeleter>;
using Operator = std::unique_ptr<mk_operator, OperatorDeleter>;
using CMoments = std::unique_ptr<mk_cmoments, CMomentsDeleter>;
using CString = std::unique_ptr<char, StringDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// FNV-1a, enough to tell inputs apart in reports.
std::string digest(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream ss;
  ss << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class PolyFactory {
 public:
  PolyFactory(std::size_t dim, const std::string& vars_csv) : dim_(dim) {
    if (!vars_csv.empty()) {
      names_ = split_names(vars_csv);
      if (names_.size() != dim) {
        throw InputError("--vars lists " + std::to_string(names_.size()) +
                         " names for dimension " + std::to_string(dim));
      }
    }
  }

  Poly parse(const std::string& text) const {
    mk_poly* p = nullptr;
    if (names_.empty()) {
      check(mk_poly_parse_default(text.c_str(), dim_, &p), "polynomial '" + text + "'");
    } else {
      std::vector<const char*> ptrs;
      for (const auto& n : names_) ptrs.push_back(n.c_str());
      check(mk_poly_parse(text.c_str(), ptrs.data(), ptrs.size(), &p),
            "polynomial '" + text + "'");
    }
    return Poly(p);
  }

  std::vector<Poly> coordinates() const {
    std::vector<Poly> out;
    for (std::size_t v = 0; v < dim_; ++v) {
      mk_poly* p = nullptr;
      check(mk_poly_variable(dim_, v, &p), "coordinate");
      out.emplace_back(p);
    }
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<std::string> names_;
};

std::string poly_text(const mk_poly* p) {
  char* s = nullptr;
  check(mk_poly_to_string(p, &s), "format polynomial");
  CString owned(s);
  return owned.get();
}

Moments load_moments(const std::string& path) {
  const std::string text = read_file(path);
  mk_moments* m = nullptr;
  check(mk_moments_from_json(text.c_str(), &m), path);
  return Moments(m);
}

json report_json(const mk_report* r) {
  json out;
  out["passed"] = mk_report_passed(r) == 1;
  out["attempted"] = mk_report_attempted(r);
  out["skipped"] = mk_report_skipped(r);
  json items = json::array();
  for (std::size_t i = 0; i < mk_report_item_count(r); ++i) {
    const char* w = nullptr;
    double value = 0;
    double bound = 0;
    int passed = 0;
    check(mk_report_item(r, i, &w, &value, &bound, &passed), "report item");
    items.push_back({{"witness", w}, {"value", value}, {"bound", bound}, {"passed", passed == 1}});
  }
  out["items"] = std::move(items);
  json violations = json::array();
  for (std::size_t i = 0; i < mk_report_violation_count(r); ++i) {
    const char* w = nullptr;
    double value = 0;
    check(mk_report_violation(r, i, &w, &value), "report violation");
    violations.push_back({{"witness", w}, {"value", value}});
  }
  out["violations"] = std::move(violations);
  json notes = json::array();
  for (std::size_t i = 0; i < mk_report_note_count(r); ++i) notes.push_back(mk_report_note(r, i));
  out["notes"] = std::move(notes);
  return out;
}

void print_report_table(std::ostream& os, const std::string& title, const mk_report* r) {
  os << title << ": " << (mk_report_passed(r) ? "PASS" : "FAIL") << " ("
     << mk_report_attempted(r) << " evaluated, " << mk_report_skipped(r)
     << " skipped)\n";
  for (std::size_t i = 0; i < mk_report_violation_count(r); ++i) {
    const char* w = nullptr;
    double value = 0;
    check(mk_report_violation(r, i, &w, &value), "report violation");
    os << "    violation: " << w << " = " << value << "\n";
  }
  for (std::size_t i = 0; i < mk_report_note_count(r); ++i) {
    os << "    note: " << mk_report_note(r, i) << "\n";
  }
}

struct OutputOptions {
  bool quiet = false;
  bool json_stdout = false;
  std::string report_path;
};

void emit(const OutputOptions& opts, const json& report, const std::string& table) {
  if (!opts.report_path.empty()) {
    std::ofstream out(opts.report_path);
    if (!out) throw InputError("cannot write " + opts.report_path);
    out << report.dump(2) << "\n";
  }
  if (opts.json_stdout) {
    std::cout << report.dump(2) << "\n";
  } else if (!opts.quiet) {
    std::cout << table;
  }
}

// ---- oracle ---------------------------------------------------------------

int run_oracle(const std::string& measure_path, unsigned degree,
               const std::string& out_path) {
  const std::string text = read_file(measure_path);
  mk_moments* m = nullptr;
  check(mk_moments_from_measure_json(text.c_str(), degree, &m), measure_path);
  Moments moments(m);
  char* doc = nullptr;
  check(mk_moments_to_json(moments.get(), &doc), "serialize");
  CString owned(doc);
  if (out_path.empty() || out_path == "-") {
    std::cout << owned.get() << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    out << owned.get() << "\n";
  }
  return kExitPass;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeOptions {
  std::string moments_path;
  std::vector<std::string> polys;
  int order = -1;
  std::string vars;
  double slack = -1.0;
};

template <class Fn>
json attempt(Fn&& fn) {
  try {
    return fn();
  } catch (const InputError& e) {
    return json{{"error", e.what()}};
  }
}

int run_analyze(const AnalyzeOptions& o, const OutputOptions& out) {
  const std::string text = read_file(o.moments_path);
  Moments moments = load_moments(o.moments_path);
  const mk_moments* L = moments.get();
  const std::size_t dim = mk_moments_dimension(L);
  const unsigned half = mk_moments_max_degree(L) / 2;
  const unsigned order = o.order >= 0 ? static_cast<unsigned>(o.order)
                                      : (half > 0 ? half - 1 : 0);
  PolyFactory factory(dim, o.vars);

  std::vector<Poly> polys;
  if (o.polys.empty()) {
    polys = factory.coordinates();
  } else {
    for (const auto& p : o.polys) polys.push_back(factory.parse(p));
  }

  json report;
  report["command"] = "analyze";
  report["inputs"] = {{"moments_file", o.moments_path}, {"digest", digest(text)},
                      {"dimension", dim}, {"max_degree", mk_moments_max_degree(L)},
                      {"normalized", mk_moments_normalized(L) == 1},
                      {"rescaled", mk_moments_rescaled(L) == 1}};
  report["order"] = order;
  json warnings = json::array();

  mk_psd_verdict psd{};
  check(mk_psd_functional_check(L, half, &psd), "psd check");
  report["psd"] = {{"order", half}, {"is_psd", psd.is_psd == 1},
                   {"min_eigenvalue", psd.min_eigenvalue},
                   {"tolerance", psd.tolerance_used}};
  if (!psd.is_psd) {
    warnings.push_back("functional is not PSD at order " + std::to_string(half) +
                       "; bounds below are diagnostics only");
  }

  std::ostringstream table;
  table << std::setprecision(10);
  table << "moments: " << o.moments_path << " (d = " << dim << ", max_degree = "
        << mk_moments_max_degree(L) << ")\n";
  table << "PSD at order " << half << ": " << (psd.is_psd ? "yes" : "NO")
        << " (min eigenvalue " << psd.min_eigenvalue << ")\n";

  json per_poly = json::array();
  for (const Poly& p : polys) {
    const std::string name = poly_text(p.get());
    json entry;
    entry["poly"] = name;
    entry["c_bound"] = attempt([&] {
      mk_c_bound_result c{};
      std::vector<double> per_n(64, 0.0);
      check(mk_c_bound(L, p.get(), 0, &c, per_n.data(), per_n.size()), "c_bound");
      per_n.resize(std::min<std::size_t>(c.n_used, per_n.size()));
      if (c.clamped) warnings.push_back("c_bound of " + name + " clamped negative moments");
      return json{{"value", c.value}, {"n_used", c.n_used}, {"per_n", per_n},
                  {"clamped", c.clamped == 1}};
    });
    entry["dd_bounds"] = attempt([&] {
      mk_rayleigh_bounds rb{};
      check(mk_dd_bounds(L, p.get(), order, &rb), "dd_bounds");
      return json{{"d_lower", rb.d_lower}, {"D_upper", rb.D_upper},
                  {"N_used", rb.N_used}, {"effective_rank", rb.effective_rank}};
    });
    entry["r_bound"] = attempt([&] {
      double r = 0;
      check(mk_r_bound(L, p.get(), order, &r), "r_bound");
      return json{{"value", r}, {"N_used", order}};
    });
    entry["archimedean_linear"] = attempt([&] {
      mk_archimedean_result b{};
      check(mk_archimedean_bound(L, p.get(), order, MK_ARCHIMEDEAN_LINEAR, &b),
            "archimedean_bound");
      return json{{"value", b.value}, {"bisection", b.bisection_value}, {"N_used", b.N_used}};
    });
    entry["archimedean_square"] = attempt([&] {
      mk_archimedean_result b{};
      check(mk_archimedean_bound(L, p.get(), order, MK_ARCHIMEDEAN_SQUARE, &b),
            "archimedean_bound");
      return json{{"value", b.value}, {"bisection", b.bisection_value}, {"N_used", b.N_used}};
    });
    entry["ql_psd"] = attempt([&] {
      mk_psd_verdict v{};
      check(mk_ql_membership_psd(L, p.get(), order, &v), "ql_membership_psd");
      return json{{"is_psd", v.is_psd == 1}, {"min_eigenvalue", v.min_eigenvalue},
                  {"N_used", order}};
    });
    entry["ql_cbound"] = attempt([&] {
      mk_ql_cbound v{};
      check(mk_ql_membership_cbound(L, p.get(), o.slack, &v), "ql_membership_cbound");
      return json{{"holds", v.holds == 1}, {"holds_raw", v.holds_raw == 1},
                  {"c_a", v.c_a}, {"c_shift", v.c_shift}, {"slack", v.slack},
                  {"n_used", v.n_used}};
    });
    entry["c_vs_dd"] = attempt([&] {
      mk_c_vs_dd_result v{};
      check(mk_c_vs_dd(L, p.get(), order, &v), "c_vs_dd");
      return json{{"c", v.c}, {"D", v.D}, {"d", v.d}, {"gap", v.max_rule_gap},
                  {"n_used", v.n_used}, {"N_used", v.N_used}};
    });

    table << "\n[" << name << "]\n";
    auto line = [&](const char* label, const json& j, auto&& fmt) {
      table << "  " << std::left << std::setw(20) << label;
      if (j.contains("error")) {
        table << "unavailable: " << j["error"].get<std::string>() << "\n";
      } else {
        fmt(j);
        table << "\n";
      }
    };
    line("C_a", entry["c_bound"], [&](const json& j) {
      table << j["value"].get<double>() << "  (n_used " << j["n_used"] << ")";
    });
    line("[d_a, D_a]", entry["dd_bounds"], [&](const json& j) {
      table << "[" << j["d_lower"].get<double>() << ", " << j["D_upper"].get<double>()
            << "]  (N " << j["N_used"] << ", rank " << j["effective_rank"] << ")";
    });
    line("R_a", entry["r_bound"], [&](const json& j) {
      table << j["value"].get<double>() << "  (N " << j["N_used"] << ")";
    });
    line("inf{M: M-a in Q}", entry["archimedean_linear"], [&](const json& j) {
      table << j["value"].get<double>();
    });
    line("inf{M: M-a^2 in Q}", entry["archimedean_square"], [&](const json& j) {
      table << j["value"].get<double>();
    });
    line("a in Q_L (PSD)", entry["ql_psd"], [&](const json& j) {
      table << (j["is_psd"].get<bool>() ? "yes" : "no") << "  (min eig "
            << j["min_eigenvalue"].get<double>() << ")";
    });
    line("a in Q_L (C test)", entry["ql_cbound"], [&](const json& j) {
      table << (j["holds"].get<bool>() ? "yes" : "no") << "  (C_{C-a} = "
            << j["c_shift"].get<double>() << " vs C_a = " << j["c_a"].get<double>() << ")";
    });
    line("|C - max(D,-d)|", entry["c_vs_dd"], [&](const json& j) {
      table << j["gap"].get<double>();
    });
    per_poly.push_back(std::move(entry));
  }
  report["polynomials"] = std::move(per_poly);

  // Support box over the coordinates.
  std::vector<Poly> coords = factory.coordinates();
  std::vector<const mk_poly*> raw;
  for (const auto& c : coords) raw.push_back(c.get());
  std::vector<double> lo(dim), hi(dim);
  std::vector<mk_status> st(dim);
  check(mk_support_box(L, raw.data(), raw.size(), order, lo.data(), hi.data(), st.data()),
        "support_box");
  json box = json::array();
  table << "\nsupport box at order " << order << ":\n";
  for (std::size_t i = 0; i < dim; ++i) {
    const std::string name = poly_text(raw[i]);
    if (st[i] == MK_OK) {
      box.push_back({{"poly", name}, {"lower", lo[i]}, {"upper", hi[i]}, {"N_used", order}});
      table << "  " << name << " in [" << lo[i] << ", " << hi[i] << "]\n";
    } else {
      box.push_back({{"poly", name}, {"error", mk_status_name(st[i])}});
      table << "  " << name << ": unavailable (" << mk_status_name(st[i]) << ")\n";
    }
  }
  report["support_box"] = std::move(box);
  report["warnings"] = warnings;
  for (const auto& w : warnings) table << "warning: " << w.get<std::string>() << "\n";

  emit(out, report, table.str());
  return psd.is_psd ? kExitPass : kExitCheckFailed;
}

// ---- certify --------------------------------------------------------------

struct CertifyOptions {
  std::string moments_path;
  std::string config_path;
  double tol = -1.0;
  unsigned max_factors = 0;
  int order = -1;
  std::string vars;
};

template <class T>
T cfg(const json& obj, const char* key) {
  if (!obj.contains(key)) throw InputError(std::string("check config misses \"") + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("check config field \"") + key + "\": " + e.what());
  }
}

template <class T>
T cfg_or(const json& obj, const char* key, T fallback) {
  return obj.contains(key) ? cfg<T>(obj, key) : fallback;
}

std::vector<const mk_poly*> raw_list(const std::vector<Poly>& v) {
  std::vector<const mk_poly*> out;
  for (const auto& p : v) out.push_back(p.get());
  return out;
}

int run_certify(const CertifyOptions& o, const OutputOptions& out) {
  const std::string moments_text = read_file(o.moments_path);
  const std::string config_text = read_file(o.config_path);
  Moments moments = load_moments(o.moments_path);
  const mk_moments* L = moments.get();
  json config;
  try {
    config = json::parse(config_text);
  } catch (const json::exception& e) {
    throw InputError("check config: " + std::string(e.what()));
  }
  if (!config.is_object() || !config.contains("checks") || !config["checks"].is_array()) {
    throw InputError("check config needs a \"checks\" array");
  }
  if (config["checks"].empty()) throw InputError("no checks requested");

  std::string vars = o.vars;
  if (vars.empty() && config.contains("variables")) {
    for (const auto& v : config["variables"]) vars += v.get<std::string>() + ",";
    vars.pop_back();
  }
  PolyFactory factory(mk_moments_dimension(L), vars);
  const double tol = o.tol >= 0 ? o.tol : cfg_or<double>(config, "tol", -1.0);
  const unsigned half = mk_moments_max_degree(L) / 2;

  json report;
  report["command"] = "certify";
  report["inputs"] = {{"moments_file", o.moments_path}, {"moments_digest", digest(moments_text)},
                      {"config_file", o.config_path}, {"config_digest", digest(config_text)}};
  json results = json::array();
  std::ostringstream table;
  table << std::setprecision(10);
  bool all_passed = true;

  for (const json& chk : config["checks"]) {
    const auto type = cfg<std::string>(chk, "type");
    const unsigned order = o.order >= 0 ? static_cast<unsigned>(o.order)
                                        : cfg_or<unsigned>(chk, "order", half > 0 ? half - 1 : 0);
    mk_report* r = nullptr;
    if (type == "products") {
      std::vector<Poly> up, lo;
      for (const json& pair : cfg<json>(chk, "factors")) {
        if (!pair.is_array() || pair.size() != 2) throw InputError("factors must be [upper, lower] pairs");
        up.push_back(factory.parse(pair[0].get<std::string>()));
        lo.push_back(factory.parse(pair[1].get<std::string>()));
      }
      const unsigned mf = o.max_factors > 0 ? o.max_factors : cfg_or<unsigned>(chk, "max_factors", 0);
      const auto ru = raw_list(up);
      const auto rl = raw_list(lo);
      check(mk_check_products(L, ru.data(), rl.data(), ru.size(), mf, tol, &r), type);
    } else if (type == "cone") {
      Poly a = factory.parse(cfg<std::string>(chk, "a"));
      Poly b = factory.parse(cfg_or<std::string>(chk, "b", cfg<std::string>(chk, "a")));
      check(mk_check_cone(L, a.get(), b.get(), cfg_or<unsigned>(chk, "jk_max", 4), tol, &r), type);
    } else if (type == "ball") {
      std::vector<Poly> coords;
      if (chk.contains("polys")) {
        for (const auto& s : chk["polys"]) coords.push_back(factory.parse(s.get<std::string>()));
      } else {
        coords = factory.coordinates();
      }
      const auto rc = raw_list(coords);
      check(mk_check_ball(L, rc.data(), rc.size(), cfg<double>(chk, "r"), order, tol, &r), type);
    } else if (type == "growth") {
      std::vector<Poly> gens;
      std::vector<double> d, gamma;
      for (const json& g : cfg<json>(chk, "generators")) {
        gens.push_back(factory.parse(cfg<std::string>(g, "poly")));
        d.push_back(cfg<double>(g, "d"));
        gamma.push_back(cfg_or<double>(g, "gamma", 1.0));
      }
      const auto rg = raw_list(gens);
      check(mk_check_growth(L, rg.data(), d.data(), gamma.data(), rg.size(), tol, &r), type);
    } else if (type == "weak_absolute_value") {
      std::vector<Poly> polys;
      std::vector<double> v;
      for (const json& e : cfg<json>(chk, "values")) {
        polys.push_back(factory.parse(cfg<std::string>(e, "poly")));
        v.push_back(cfg<double>(e, "v"));
      }
      const auto rp = raw_list(polys);
      check(mk_check_weak_absolute_value(L, rp.data(), v.data(), rp.size(),
                                         cfg_or<double>(chk, "C", 1.0), tol, &r),
            type);
    } else if (type == "schmudgen") {
      std::vector<Poly> constraints;
      for (const auto& s : cfg<json>(chk, "polys")) {
        constraints.push_back(factory.parse(s.get<std::string>()));
      }
      const auto rc = raw_list(constraints);
      check(mk_check_schmudgen(L, rc.data(), rc.size(), order, &r), type);
    } else if (type == "interval") {
      std::vector<Poly> polys;
      std::vector<double> lo, hi;
      for (const json& e : cfg<json>(chk, "entries")) {
        polys.push_back(factory.parse(cfg<std::string>(e, "poly")));
        lo.push_back(cfg<double>(e, "lower"));
        hi.push_back(cfg<double>(e, "upper"));
      }
      const auto rp = raw_list(polys);
      check(mk_check_interval(L, rp.data(), lo.data(), hi.data(), rp.size(), order, &r), type);
    } else if (type == "identities") {
      check(mk_identity_suite(&r), type);
    } else {
      throw InputError("unknown check type \"" + type + "\"");
    }
    Report owned(r);
    json entry = report_json(r);
    entry["type"] = type;
    entry["order"] = order;
    results.push_back(std::move(entry));
    print_report_table(table, type, r);
    all_passed = all_passed && mk_report_passed(r);
  }
  report["checks"] = std::move(results);
  report["passed"] = all_passed;
  table << (all_passed ? "all checks passed\n" : "at least one check FAILED\n");
  emit(out, report, table.str());
  return all_passed ? kExitPass : kExitCheckFailed;
}

// ---- spectral -------------------------------------------------------------

int run_spectral(const std::string& path, unsigned k, const OutputOptions& out) {
  const std::string text = read_file(path);
  mk_operator* raw = nullptr;
  check(mk_operator_from_json(text.c_str(), &raw), path);
  Operator op(raw);
  if (k == 0) k = static_cast<unsigned>(mk_operator_order(op.get()));

  json report;
  report["command"] = "spectral";
  report["inputs"] = {{"operator_file", path}, {"digest", digest(text)}, {"k", k}};
  json warnings = json::array();

  const unsigned max_degree = 2 * k;
  std::vector<double> moments(max_degree + 1);
  check(mk_operator_moments(op.get(), max_degree, moments.data()), "operator moments");
  double alpha = 0, beta = 0;
  check(mk_rayleigh_interval(op.get(), &alpha, &beta), "rayleigh interval");

  std::vector<double> nodes(k), weights(k);
  std::size_t count = 0;
  unsigned achievable = 0;
  mk_status s = mk_quadrature_from_moments(moments.data(), moments.size(), k,
                                           nodes.data(), weights.data(), &count,
                                           &achievable);
  unsigned used_k = k;
  if (s == MK_ERR_RANK_DEFICIENT && achievable > 0) {
    warnings.push_back("requested k = " + std::to_string(k) + " exceeds the moment rank; reduced to k = " +
                       std::to_string(achievable));
    used_k = achievable;
    s = mk_quadrature_from_moments(moments.data(), moments.size(), used_k, nodes.data(),
                                   weights.data(), &count, nullptr);
  }
  check(s, "quadrature");
  nodes.resize(count);
  weights.resize(count);

  // Pencil agreement: dd_bounds at order used_k - 1 against the extreme nodes.
  mk_moments* seq = nullptr;
  check(mk_moments_from_values(1, max_degree, moments.data(), moments.size(), &seq),
        "moment sequence");
  Moments seq_owned(seq);
  mk_poly* t = nullptr;
  check(mk_poly_variable(1, 0, &t), "variable");
  Poly t_owned(t);
  mk_rayleigh_bounds rb{};
  check(mk_dd_bounds(seq, t, used_k - 1, &rb), "dd_bounds");
  const double residual = std::max(std::fabs(rb.d_lower - nodes.front()),
                                   std::fabs(rb.D_upper - nodes.back()));
  bool contained = true;
  for (double x : nodes) contained = contained && x >= alpha - 1e-9 && x <= beta + 1e-9;

  report["moments"] = moments;
  report["rayleigh_interval"] = {{"alpha", alpha}, {"beta", beta}};
  report["quadrature"] = {{"k", used_k}, {"nodes", nodes}, {"weights", weights}};
  report["pencil_agreement"] = {{"order", used_k - 1}, {"d_lower", rb.d_lower},
                                {"D_upper", rb.D_upper}, {"residual", residual}};
  report["nodes_in_interval"] = contained;
  report["warnings"] = warnings;

  std::ostringstream table;
  table << std::setprecision(12);
  table << "Rayleigh interval: [" << alpha << ", " << beta << "]\n";
  table << "quadrature with k = " << used_k << ":\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    table << "  node " << std::setw(20) << nodes[i] << "  weight " << weights[i] << "\n";
  }
  table << "pencil agreement residual: " << residual << "\n";
  for (const auto& w : warnings) table << "warning: " << w.get<std::string>() << "\n";
  emit(out, report, table.str());
  return contained && residual <= 1e-8 ? kExitPass : kExitCheckFailed;
}

// ---- disc -----------------------------------------------------------------

int run_disc(const std::string& path, double r, double c, unsigned level, double tol,
             const OutputOptions& out) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  mk_cmoments* raw = nullptr;
  if (doc.is_object() && doc.contains("atoms")) {
    check(mk_cmoments_from_atoms_json(text.c_str(), level, &raw), path);
  } else {
    check(mk_cmoments_from_json(text.c_str(), &raw), path);
  }
  CMoments f(raw);
  const unsigned max_level = mk_cmoments_max_level(f.get());

  mk_psd_verdict psd{};
  check(mk_psd_function_check(f.get(), max_level / 2, tol, &psd), "psd_function_check");
  mk_report* rr = nullptr;
  check(mk_disc_check(f.get(), r, c, tol, &rr), "disc_check");
  Report disc(rr);
  mk_c_bound_result rs{};
  std::vector<double> per_n(max_level + 1, 0.0);
  check(mk_r_s_bound(f.get(), 0, 1, &rs, per_n.data(), per_n.size()), "r_s_bound");
  per_n.resize(rs.n_used);

  json report;
  report["command"] = "disc";
  report["inputs"] = {{"file", path}, {"digest", digest(text)}, {"r", r}, {"C", c},
                      {"max_level", max_level}};
  report["psd"] = {{"level", max_level / 2}, {"is_psd", psd.is_psd == 1},
                   {"min_eigenvalue", psd.min_eigenvalue}, {"tolerance", psd.tolerance_used}};
  report["disc_check"] = report_json(disc.get());
  report["r_s"] = {{"s", {0, 1}}, {"value", rs.value}, {"n_used", rs.n_used}, {"per_n", per_n}};

  std::ostringstream table;
  table << std::setprecision(10);
  table << "positive semidefinite at level " << max_level / 2 << ": "
        << (psd.is_psd ? "yes" : "NO") << " (min eigenvalue " << psd.min_eigenvalue << ")\n";
  print_report_table(table, "disc check", disc.get());
  table << "R_s for s = (0,1): " << rs.value << " (n_used " << rs.n_used << ")\n";
  emit(out, report, table.str());
  return mk_report_passed(disc.get()) ? kExitPass : kExitCheckFailed;
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_flag("--quiet,-q", out.quiet, "Suppress the human-readable table");
  cmd->add_flag("--json", out.json_stdout, "Print the JSON report to standard output");
  cmd->add_option("--report", out.report_path, "Write the JSON report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momentkit: intrinsic checks for truncated moment functionals"};
  app.require_subcommand(1);

  std::string oracle_measure, oracle_out;
  unsigned oracle_degree = 0;
  auto* oracle = app.add_subcommand("oracle", "Moments of a measure document");
  oracle->add_option("measure", oracle_measure, "Measure document")->required();
  oracle->add_option("--degree,-d", oracle_degree, "Even max degree 2N")->required();
  oracle->add_option("--out,-o", oracle_out, "Output moment document (default stdout)");

  AnalyzeOptions an;
  OutputOptions an_out;
  auto* analyze = app.add_subcommand("analyze", "Intrinsic bounds of a moment sequence");
  analyze->add_option("moments", an.moments_path, "Moment document")->required();
  analyze->add_option("--poly,-p", an.polys, "Polynomial to analyze (repeatable)");
  analyze->add_option("--order,-N", an.order, "Moment matrix order N");
  analyze->add_option("--vars", an.vars, "Comma separated variable names");
  analyze->add_option("--slack", an.slack, "Slack for the C-based Q_L test");
  add_output_flags(analyze, an_out);

  CertifyOptions ce;
  OutputOptions ce_out;
  auto* certify = app.add_subcommand("certify", "Run positivity checks from a config");
  certify->add_option("moments", ce.moments_path, "Moment document")->required();
  certify->add_option("config", ce.config_path, "Check configuration")->required();
  certify->add_option("--tol", ce.tol, "Violation tolerance");
  certify->add_option("--max-factors", ce.max_factors, "Longest product in product checks");
  certify->add_option("--order,-N", ce.order, "Moment matrix order for matrix checks");
  certify->add_option("--vars", ce.vars, "Comma separated variable names");
  add_output_flags(certify, ce_out);

  std::string sp_path;
  unsigned sp_k = 0;
  OutputOptions sp_out;
  auto* spectral = app.add_subcommand("spectral", "Spectral measure of <T^n h, h>");
  spectral->add_option("operator", sp_path, "Operator document")->required();
  spectral->add_option("--nodes,-k", sp_k, "Quadrature node count (default: operator order)");
  add_output_flags(spectral, sp_out);

  std::string disc_path;
  double disc_r = 1.0;
  double disc_c = 1.0;
  unsigned disc_level = 8;
  double disc_tol = -1.0;
  OutputOptions disc_out;
  auto* disc = app.add_subcommand("disc", "Disc criterion for a complex moment function");
  disc->add_option("file", disc_path, "Complex moment or complex atom document")->required();
  disc->add_option("-r,--radius", disc_r, "Disc radius r")->required();
  disc->add_option("-C,--constant", disc_c, "Growth constant C");
  disc->add_option("--level", disc_level, "Table level for atom documents");
  disc->add_option("--tol", disc_tol, "PSD / growth tolerance");
  add_output_flags(disc, disc_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (*oracle) return run_oracle(oracle_measure, oracle_degree, oracle_out);
    if (*analyze) return run_analyze(an, an_out);
    if (*certify) return run_certify(ce, ce_out);
    if (*spectral) return run_spectral(sp_path, sp_k, sp_out);
    if (*disc) return run_disc(disc_path, disc_r, disc_c, disc_level, disc_tol, disc_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

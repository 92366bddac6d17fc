#include "momentkit/momentkit.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "momentkit/certify.hpp"
#include "momentkit/documents.hpp"
#include "momentkit/intrinsic.hpp"
#include "momentkit/semigroup.hpp"
#include "momentkit/spectral.hpp"

namespace mk = momentkit;

struct mk_poly {
  mk::Polynomial value;
  std::vector<std::string> names;  // empty: default names
};
struct mk_moments {
  mk::MomentSequence value;
};
struct mk_report {
  mk::CheckReport value;
};
struct mk_operator {
  mk::SymMatrix op;
  std::vector<double> h;
};
struct mk_cmoments {
  mk::ComplexMomentFunction value;
};

namespace {

thread_local std::string g_last_error;

mk_status fail(mk_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

class NullArgument : public std::exception {};

template <class T>
const T& deref(const T* p) {
  if (p == nullptr) throw NullArgument();
  return *p;
}

template <class T>
void require(T* p) {
  if (p == nullptr) throw NullArgument();
}

template <class Fn>
mk_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return MK_OK;
  } catch (const mk::Error& e) {
    return fail(static_cast<mk_status>(e.code()), e.what());
  } catch (const NullArgument&) {
    return fail(MK_ERR_NULL_ARGUMENT, "required pointer argument is NULL");
  } catch (const std::bad_alloc&) {
    return fail(MK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MK_ERR_INTERNAL, "unknown exception");
  }
}

std::optional<double> tol_arg(double tol) {
  return tol < 0.0 ? std::nullopt : std::optional<double>(tol);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<mk::Polynomial> poly_list(const mk_poly* const* polys, size_t n) {
  if (n > 0) require(polys);
  std::vector<mk::Polynomial> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(deref(polys[i]).value);
  return out;
}

mk_psd_verdict to_c(const mk::PsdVerdict& v) {
  return {v.is_psd ? 1 : 0, v.min_eigenvalue, v.tolerance_used};
}

void fill_c_bound(const mk::CBoundEstimate& est, mk_c_bound_result* out,
                  double* per_n, size_t cap) {
  *out = {est.value, est.n_used, est.clamped ? 1 : 0};
  if (per_n != nullptr) {
    for (size_t i = 0; i < cap && i < est.per_n.size(); ++i) per_n[i] = est.per_n[i];
  }
}

}  // namespace

extern "C" {

const char* mk_last_error(void) { return g_last_error.c_str(); }

const char* mk_status_name(mk_status status) {
  switch (status) {
    case MK_OK: return "ok";
    case MK_ERR_NULL_ARGUMENT: return "null argument";
    case MK_ERR_INTERNAL: return "internal error";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= 10) return mk::errc_name(static_cast<mk::Errc>(code));
  return "unknown status";
}

const char* mk_version(void) { return "1.0.0"; }

void mk_string_free(char* s) { std::free(s); }

// ---- polynomials ----------------------------------------------------------

mk_status mk_poly_parse(const char* text, const char* const* vars, size_t nvars,
                        mk_poly** out) {
  return guarded([&] {
    require(text);
    require(out);
    if (nvars > 0) require(vars);
    std::vector<std::string> names;
    for (size_t i = 0; i < nvars; ++i) {
      require(vars[i]);
      names.emplace_back(vars[i]);
    }
    auto value = mk::parse_polynomial(text, names);
    *out = new mk_poly{std::move(value), std::move(names)};
  });
}

mk_status mk_poly_parse_default(const char* text, size_t dim, mk_poly** out) {
  return guarded([&] {
    require(text);
    require(out);
    if (dim == 0) throw mk::Error(mk::Errc::invalid_argument, "dimension must be >= 1");
    const auto names = mk::default_variable_names(dim);
    auto value = mk::parse_polynomial(text, names);
    *out = new mk_poly{std::move(value), std::move(names)};
  });
}

mk_status mk_poly_variable(size_t dim, size_t var, mk_poly** out) {
  return guarded([&] {
    require(out);
    *out = new mk_poly{mk::Polynomial::variable(dim, var), {}};
  });
}

mk_status mk_poly_mul(const mk_poly* p, const mk_poly* q, mk_poly** out) {
  return guarded([&] {
    require(out);
    const mk_poly& a = deref(p);
    const mk_poly& b = deref(q);
    *out = new mk_poly{a.value * b.value, a.names == b.names ? a.names
                                                             : std::vector<std::string>{}};
  });
}

void mk_poly_free(mk_poly* p) { delete p; }

size_t mk_poly_dimension(const mk_poly* p) { return p ? p->value.dimension() : 0; }

int mk_poly_degree(const mk_poly* p) { return p ? p->value.degree() : -1; }

mk_status mk_poly_eval(const mk_poly* p, const double* point, size_t len,
                       double* out) {
  return guarded([&] {
    require(out);
    if (len > 0) require(point);
    *out = mk::eval(deref(p).value, std::span<const double>(point, len));
  });
}

mk_status mk_poly_to_string(const mk_poly* p, char** out) {
  return guarded([&] {
    require(out);
    const mk_poly& poly = deref(p);
    *out = dup_string(poly.names.empty() ? mk::to_string(poly.value)
                                         : mk::to_string(poly.value, poly.names));
  });
}

// ---- moment sequences -----------------------------------------------------

mk_status mk_moments_from_json(const char* text, mk_moments** out) {
  return guarded([&] {
    require(text);
    require(out);
    *out = new mk_moments{mk::parse_moment_document(text)};
  });
}

mk_status mk_moments_from_measure_json(const char* text, unsigned max_degree,
                                       mk_moments** out) {
  return guarded([&] {
    require(text);
    require(out);
    const mk::MeasureSpec spec = mk::parse_measure_document(text);
    *out = new mk_moments{mk::from_measure(spec, max_degree)};
  });
}

mk_status mk_moments_from_values(size_t dim, unsigned max_degree,
                                 const double* values, size_t count,
                                 mk_moments** out) {
  return guarded([&] {
    require(out);
    if (count > 0) require(values);
    *out = new mk_moments{
        mk::MomentSequence(dim, max_degree, std::vector<double>(values, values + count))};
  });
}

mk_status mk_moments_to_json(const mk_moments* L, char** out) {
  return guarded([&] {
    require(out);
    *out = dup_string(mk::write_moment_document(deref(L).value));
  });
}

void mk_moments_free(mk_moments* L) { delete L; }

size_t mk_moments_dimension(const mk_moments* L) {
  return L ? L->value.dimension() : 0;
}
unsigned mk_moments_max_degree(const mk_moments* L) {
  return L ? L->value.max_degree() : 0;
}
int mk_moments_normalized(const mk_moments* L) {
  return L && L->value.normalized() ? 1 : 0;
}
int mk_moments_rescaled(const mk_moments* L) {
  return L && L->value.was_rescaled() ? 1 : 0;
}

mk_status mk_moments_apply(const mk_moments* L, const mk_poly* p, double* out) {
  return guarded([&] {
    require(out);
    *out = mk::apply(deref(L).value, deref(p).value);
  });
}

mk_status mk_psd_functional_check(const mk_moments* L, unsigned order,
                                  mk_psd_verdict* out) {
  return guarded([&] {
    require(out);
    *out = to_c(mk::psd_functional_check(deref(L).value, order));
  });
}

// ---- intrinsic bounds -----------------------------------------------------

mk_status mk_c_bound(const mk_moments* L, const mk_poly* a, unsigned max_power,
                     mk_c_bound_result* out, double* per_n, size_t per_n_cap) {
  return guarded([&] {
    require(out);
    const auto est = mk::c_bound(
        deref(L).value, deref(a).value,
        max_power == 0 ? std::nullopt : std::optional<unsigned>(max_power));
    fill_c_bound(est, out, per_n, per_n_cap);
  });
}

mk_status mk_dd_bounds(const mk_moments* L, const mk_poly* a, unsigned order,
                       mk_rayleigh_bounds* out) {
  return guarded([&] {
    require(out);
    const auto rb = mk::dd_bounds(deref(L).value, deref(a).value, order);
    *out = {rb.d_lower, rb.D_upper, rb.N_used, rb.effective_rank};
  });
}

mk_status mk_r_bound(const mk_moments* L, const mk_poly* a, unsigned order,
                     double* out) {
  return guarded([&] {
    require(out);
    *out = mk::r_bound(deref(L).value, deref(a).value, order);
  });
}

mk_status mk_ql_membership_psd(const mk_moments* L, const mk_poly* a,
                               unsigned order, mk_psd_verdict* out) {
  return guarded([&] {
    require(out);
    *out = to_c(mk::ql_membership_psd(deref(L).value, deref(a).value, order));
  });
}

mk_status mk_ql_membership_cbound(const mk_moments* L, const mk_poly* a,
                                  double slack, mk_ql_cbound* out) {
  return guarded([&] {
    require(out);
    const auto v = mk::ql_membership_cbound(
        deref(L).value, deref(a).value, slack < 0.0 ? mk::kDefaultQlSlack : slack);
    *out = {v.holds ? 1 : 0, v.holds_raw ? 1 : 0, v.c_a, v.c_shift, v.slack, v.n_used};
  });
}

mk_status mk_archimedean_bound(const mk_moments* L, const mk_poly* a,
                               unsigned order, mk_archimedean_mode mode,
                               mk_archimedean_result* out) {
  return guarded([&] {
    require(out);
    const auto b = mk::archimedean_bound(
        deref(L).value, deref(a).value, order,
        mode == MK_ARCHIMEDEAN_SQUARE ? mk::ArchimedeanMode::square
                                      : mk::ArchimedeanMode::linear);
    *out = {b.value, b.bisection_value, b.N_used};
  });
}

mk_status mk_support_box(const mk_moments* L, const mk_poly* const* polys,
                         size_t count, unsigned order, double* lower,
                         double* upper, mk_status* entry_status) {
  return guarded([&] {
    if (count > 0) {
      require(lower);
      require(upper);
      require(entry_status);
    }
    const auto list = poly_list(polys, count);
    for (size_t i = 0; i < count; ++i) {
      entry_status[i] = guarded([&] {
        const auto rb = mk::dd_bounds(deref(L).value, list[i], order);
        lower[i] = rb.d_lower;
        upper[i] = rb.D_upper;
      });
    }
  });
}

mk_status mk_c_vs_dd(const mk_moments* L, const mk_poly* a, unsigned order,
                     mk_c_vs_dd_result* out) {
  return guarded([&] {
    require(out);
    const auto r = mk::c_vs_dd(deref(L).value, deref(a).value, order);
    *out = {r.c, r.D, r.d, r.max_rule_gap, r.n_used, r.N_used};
  });
}

// ---- reports --------------------------------------------------------------

void mk_report_free(mk_report* r) { delete r; }
int mk_report_passed(const mk_report* r) { return r && r->value.passed ? 1 : 0; }
size_t mk_report_attempted(const mk_report* r) { return r ? r->value.attempted : 0; }
size_t mk_report_skipped(const mk_report* r) { return r ? r->value.skipped : 0; }
size_t mk_report_item_count(const mk_report* r) { return r ? r->value.items.size() : 0; }

mk_status mk_report_item(const mk_report* r, size_t i, const char** witness,
                         double* value, double* bound, int* passed) {
  return guarded([&] {
    const auto& items = deref(r).value.items;
    if (i >= items.size()) {
      throw mk::Error(mk::Errc::invalid_argument, "report item index out of range");
    }
    if (witness) *witness = items[i].witness.c_str();
    if (value) *value = items[i].value;
    if (bound) *bound = items[i].bound;
    if (passed) *passed = items[i].passed ? 1 : 0;
  });
}

size_t mk_report_violation_count(const mk_report* r) {
  return r ? r->value.violations.size() : 0;
}

mk_status mk_report_violation(const mk_report* r, size_t i, const char** witness,
                              double* value) {
  return guarded([&] {
    const auto& v = deref(r).value.violations;
    if (i >= v.size()) {
      throw mk::Error(mk::Errc::invalid_argument, "violation index out of range");
    }
    if (witness) *witness = v[i].witness.c_str();
    if (value) *value = v[i].value;
  });
}

size_t mk_report_note_count(const mk_report* r) { return r ? r->value.notes.size() : 0; }

const char* mk_report_note(const mk_report* r, size_t i) {
  if (r == nullptr || i >= r->value.notes.size()) return nullptr;
  return r->value.notes[i].c_str();
}

// ---- checks ---------------------------------------------------------------

mk_status mk_check_products(const mk_moments* L, const mk_poly* const* uppers,
                            const mk_poly* const* lowers, size_t pairs,
                            unsigned max_factors, double tol, mk_report** out) {
  return guarded([&] {
    require(out);
    const auto up = poly_list(uppers, pairs);
    const auto lo = poly_list(lowers, pairs);
    std::vector<mk::FactorPair> factors;
    for (size_t i = 0; i < pairs; ++i) factors.push_back({up[i], lo[i]});
    *out = new mk_report{mk::product_positivity_check(
        deref(L).value, factors, max_factors == 0 ? mk::kDefaultMaxFactors : max_factors,
        tol_arg(tol))};
  });
}

mk_status mk_check_cone(const mk_moments* L, const mk_poly* a, const mk_poly* b,
                        unsigned jk_max, double tol, mk_report** out) {
  return guarded([&] {
    require(out);
    *out = new mk_report{mk::cone_check(deref(L).value, deref(a).value,
                                        deref(b).value, jk_max, tol_arg(tol))};
  });
}

mk_status mk_check_ball(const mk_moments* L, const mk_poly* const* coords,
                        size_t count, double r, unsigned order, double tol,
                        mk_report** out) {
  return guarded([&] {
    require(out);
    const auto list = poly_list(coords, count);
    *out = new mk_report{mk::ball_check(deref(L).value, list, r, order, tol_arg(tol))};
  });
}

mk_status mk_check_growth(const mk_moments* L, const mk_poly* const* generators,
                          const double* d, const double* gamma, size_t count,
                          double tol, mk_report** out) {
  return guarded([&] {
    require(out);
    if (count > 0) {
      require(d);
      require(gamma);
    }
    const auto list = poly_list(generators, count);
    std::vector<mk::GrowthGenerator> gens;
    for (size_t i = 0; i < count; ++i) gens.push_back({list[i], d[i], gamma[i]});
    *out = new mk_report{mk::growth_check(deref(L).value, gens, tol_arg(tol))};
  });
}

mk_status mk_check_weak_absolute_value(const mk_moments* L,
                                       const mk_poly* const* polys,
                                       const double* v, size_t count, double c,
                                       double tol, mk_report** out) {
  return guarded([&] {
    require(out);
    if (count > 0) require(v);
    const auto list = poly_list(polys, count);
    std::vector<mk::AbsoluteValueEntry> entries;
    for (size_t i = 0; i < count; ++i) entries.push_back({list[i], v[i]});
    *out = new mk_report{
        mk::weak_absolute_value_check(deref(L).value, entries, c, tol_arg(tol))};
  });
}

mk_status mk_check_schmudgen(const mk_moments* L, const mk_poly* const* constraints,
                             size_t count, unsigned order, mk_report** out) {
  return guarded([&] {
    require(out);
    const auto list = poly_list(constraints, count);
    *out = new mk_report{mk::schmudgen_check(deref(L).value, list, order)};
  });
}

mk_status mk_check_interval(const mk_moments* L, const mk_poly* const* polys,
                            const double* lower, const double* upper,
                            size_t count, unsigned order, mk_report** out) {
  return guarded([&] {
    require(out);
    if (count > 0) {
      require(lower);
      require(upper);
    }
    const auto list = poly_list(polys, count);
    std::vector<mk::IntervalEntry> entries;
    for (size_t i = 0; i < count; ++i) entries.push_back({list[i], lower[i], upper[i]});
    *out = new mk_report{mk::interval_membership_check(deref(L).value, entries, order)};
  });
}

mk_status mk_identity_suite(mk_report** out) {
  return guarded([&] {
    require(out);
    *out = new mk_report{mk::identity_suite()};
  });
}

// ---- operators ------------------------------------------------------------

mk_status mk_operator_from_json(const char* text, mk_operator** out) {
  return guarded([&] {
    require(text);
    require(out);
    auto doc = mk::parse_operator_document(text);
    if (doc.h.size() != doc.op.order()) {
      throw mk::Error(mk::Errc::dimension_mismatch,
                      "operator vector length does not match the matrix order");
    }
    *out = new mk_operator{std::move(doc.op), std::move(doc.h)};
  });
}

mk_status mk_operator_from_arrays(const double* matrix, size_t order,
                                  const double* h, mk_operator** out) {
  return guarded([&] {
    require(out);
    if (order > 0) {
      require(matrix);
      require(h);
    }
    std::vector<std::vector<double>> rows(order, std::vector<double>(order));
    for (size_t i = 0; i < order; ++i) {
      for (size_t j = 0; j < order; ++j) rows[i][j] = matrix[i * order + j];
    }
    *out = new mk_operator{mk::SymMatrix::from_rows(rows),
                           std::vector<double>(h, h + order)};
  });
}

void mk_operator_free(mk_operator* op) { delete op; }

size_t mk_operator_order(const mk_operator* op) { return op ? op->op.order() : 0; }

mk_status mk_operator_moments(const mk_operator* op, unsigned max_degree,
                              double* moments) {
  return guarded([&] {
    require(moments);
    const auto& o = deref(op);
    const auto data = mk::operator_moments(o.op, o.h, max_degree);
    std::copy(data.moments.begin(), data.moments.end(), moments);
  });
}

mk_status mk_rayleigh_interval(const mk_operator* op, double* alpha, double* beta) {
  return guarded([&] {
    require(alpha);
    require(beta);
    const auto r = mk::rayleigh_interval(deref(op).op);
    *alpha = r.alpha;
    *beta = r.beta;
  });
}

mk_status mk_quadrature_from_moments(const double* moments, size_t count,
                                     unsigned k, double* nodes, double* weights,
                                     size_t* out_count, unsigned* achievable) {
  return guarded([&] {
    require(nodes);
    require(weights);
    require(out_count);
    if (count > 0) require(moments);
    try {
      const auto q = mk::quadrature_from_moments(
          std::span<const double>(moments, count), k);
      std::copy(q.nodes.begin(), q.nodes.end(), nodes);
      std::copy(q.weights.begin(), q.weights.end(), weights);
      *out_count = q.nodes.size();
    } catch (const mk::RankDeficiency& e) {
      if (achievable) *achievable = e.achievable();
      throw;
    }
  });
}

// ---- complex moment functions ---------------------------------------------

mk_status mk_cmoments_from_json(const char* text, mk_cmoments** out) {
  return guarded([&] {
    require(text);
    require(out);
    *out = new mk_cmoments{mk::parse_complex_moment_document(text)};
  });
}

mk_status mk_cmoments_from_atoms_json(const char* text, unsigned max_level,
                                      mk_cmoments** out) {
  return guarded([&] {
    require(text);
    require(out);
    const auto doc = mk::parse_complex_atoms_document(text);
    const unsigned level =
        doc.max_level >= 0 ? static_cast<unsigned>(doc.max_level) : max_level;
    *out = new mk_cmoments{mk::from_complex_atoms(doc.atoms, level)};
  });
}

mk_status mk_cmoments_from_atoms(const double* re, const double* im,
                                 const double* weights, size_t count,
                                 unsigned max_level, mk_cmoments** out) {
  return guarded([&] {
    require(out);
    if (count > 0) {
      require(re);
      require(im);
      require(weights);
    }
    std::vector<mk::ComplexAtom> atoms;
    for (size_t i = 0; i < count; ++i) atoms.push_back({{re[i], im[i]}, weights[i]});
    *out = new mk_cmoments{mk::from_complex_atoms(atoms, max_level)};
  });
}

mk_status mk_cmoments_to_json(const mk_cmoments* f, char** out) {
  return guarded([&] {
    require(out);
    *out = dup_string(mk::write_complex_moment_document(deref(f).value));
  });
}

void mk_cmoments_free(mk_cmoments* f) { delete f; }

unsigned mk_cmoments_max_level(const mk_cmoments* f) {
  return f ? f->value.max_level() : 0;
}

mk_status mk_cmoments_value(const mk_cmoments* f, unsigned m, unsigned n,
                            double* re, double* im) {
  return guarded([&] {
    require(re);
    require(im);
    const auto v = deref(f).value(m, n);
    *re = v.real();
    *im = v.imag();
  });
}

mk_status mk_psd_function_check(const mk_cmoments* f, unsigned level, double tol,
                                mk_psd_verdict* out) {
  return guarded([&] {
    require(out);
    *out = to_c(mk::psd_function_check(deref(f).value, level, tol_arg(tol)));
  });
}

mk_status mk_r_s_bound(const mk_cmoments* f, unsigned m, unsigned n,
                       mk_c_bound_result* out, double* per_n, size_t per_n_cap) {
  return guarded([&] {
    require(out);
    fill_c_bound(mk::r_s_bound(deref(f).value, {m, n}), out, per_n, per_n_cap);
  });
}

mk_status mk_disc_check(const mk_cmoments* f, double r, double c, double tol,
                        mk_report** out) {
  return guarded([&] {
    require(out);
    *out = new mk_report{mk::disc_check(deref(f).value, r, c, tol_arg(tol))};
  });
}

}  // extern "C"

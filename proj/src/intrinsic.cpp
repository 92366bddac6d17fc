#include "momentkit/intrinsic.hpp"

#include <algorithm>
#include <cmath>

namespace momentkit {

CBoundEstimate c_bound(const MomentSequence& moments, const Polynomial& a,
                       std::optional<unsigned> max_power) {
  moments.require_normalized("c_bound");
  if (a.dimension() != moments.dimension()) {
    throw Error(Errc::dimension_mismatch, "polynomial dimension does not match");
  }
  CBoundEstimate est;
  const int deg = a.degree();
  if (deg <= 0) {
    // L(c^{2n}) = c^{2n} when L(1) = 1.
    const double c = a.is_zero() ? 0.0 : std::fabs(a.coefficient(MultiIndex::zero(a.dimension())));
    est.n_used = std::max(moments.half_degree(), 1u);
    if (max_power) est.n_used = std::min(est.n_used, std::max(*max_power, 1u));
    est.per_n.assign(est.n_used, c);
    est.value = c;
    return est;
  }
  unsigned n_used = moments.half_degree() / static_cast<unsigned>(deg);
  if (max_power) n_used = std::min(n_used, *max_power);
  if (n_used == 0) {
    throw Error(Errc::degree_overflow,
                "c_bound needs L(a^2) but deg(a) = " + std::to_string(deg) +
                    " exceeds N_max = " + std::to_string(moments.half_degree()));
  }
  est.n_used = n_used;
  const Polynomial a2 = a * a;
  Polynomial power = a2;
  for (unsigned n = 1; n <= n_used; ++n) {
    if (n > 1) power = power * a2;
    double v = apply(moments, power);
    if (v < 0.0) {
      est.clamped = true;
      v = 0.0;
    }
    const double root = std::pow(v, 1.0 / (2.0 * n));
    est.per_n.push_back(root);
    est.value = std::max(est.value, root);
  }
  return est;
}

RayleighBounds dd_bounds(const MomentSequence& moments, const Polynomial& a,
                         unsigned order) {
  const MomentMatrix shifted = moment_matrix(moments, order, a);
  const MomentMatrix plain = moment_matrix(moments, order);
  const PencilExtremes ext = pencil_extremes(shifted.matrix, plain.matrix);
  return {ext.lambda_min, ext.lambda_max, order, ext.effective_rank};
}

double r_bound(const MomentSequence& moments, const Polynomial& a,
               unsigned order) {
  return dd_bounds(moments, a * a, order).D_upper;
}

PsdVerdict ql_membership_psd(const MomentSequence& moments, const Polynomial& a,
                             unsigned order) {
  return psd_check(moment_matrix(moments, order, a).matrix);
}

QlCBoundVerdict ql_membership_cbound(const MomentSequence& moments,
                                     const Polynomial& a, double slack) {
  QlCBoundVerdict out;
  const CBoundEstimate ca = c_bound(moments, a);
  out.c_a = ca.value;
  out.n_used = ca.n_used;
  out.slack = slack;
  const Polynomial shifted =
      Polynomial::constant(a.dimension(), ca.value) - a;
  out.c_shift = c_bound(moments, shifted).value;
  out.holds_raw = out.c_shift <= out.c_a;
  out.holds = out.c_shift <= out.c_a * (1.0 + slack);
  return out;
}

namespace {

// Bisection on "M*M_N - M_N(q) is PSD", which is monotone in M.
double bisect_archimedean(const SymMatrix& plain, const SymMatrix& target,
                          bool nonnegative, double ceiling) {
  const double tol = 1e-13 * (1.0 + std::max(plain.max_abs(), target.max_abs()));
  auto feasible = [&](double m) {
    return psd_check(m * plain - target, tol).is_psd;
  };
  double hi = 1.0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (hi > ceiling) {
      throw Error(Errc::no_finite_bound,
                  "no M below the ceiling makes the localized matrix PSD");
    }
  }
  double lo = nonnegative ? 0.0 : -1.0;
  if (nonnegative) {
    if (feasible(0.0)) return 0.0;
  } else {
    while (feasible(lo)) {
      hi = lo;
      lo *= 2.0;
      if (lo < -ceiling) {
        throw Error(Errc::no_finite_bound, "localized matrix is PSD for all M");
      }
    }
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

ArchimedeanBound archimedean_bound(const MomentSequence& moments,
                                   const Polynomial& a, unsigned order,
                                   ArchimedeanMode mode, double ceiling) {
  const Polynomial q = mode == ArchimedeanMode::linear ? a : a * a;
  const MomentMatrix shifted = moment_matrix(moments, order, q);
  const MomentMatrix plain = moment_matrix(moments, order);
  const PencilExtremes ext = pencil_extremes(shifted.matrix, plain.matrix);
  ArchimedeanBound out;
  out.N_used = order;
  out.value = ext.lambda_max;
  if (mode == ArchimedeanMode::square) out.value = std::max(out.value, 0.0);
  if (!(std::fabs(out.value) <= ceiling)) {
    throw Error(Errc::no_finite_bound, "archimedean bound exceeds the ceiling");
  }
  out.bisection_value = bisect_archimedean(
      plain.matrix, shifted.matrix, mode == ArchimedeanMode::square, ceiling);
  return out;
}

SupportBox support_box(const MomentSequence& moments,
                       std::span<const Polynomial> polys, unsigned order) {
  SupportBox box;
  for (const Polynomial& p : polys) {
    SupportEntry entry{p, 0.0, 0.0, order, std::nullopt};
    try {
      const RayleighBounds rb = dd_bounds(moments, p, order);
      entry.lower = rb.d_lower;
      entry.upper = rb.D_upper;
    } catch (const Error& e) {
      entry.error = e.what();
    }
    box.entries.push_back(std::move(entry));
  }
  return box;
}

SupportBox support_box(const MomentSequence& moments, unsigned order) {
  std::vector<Polynomial> coords;
  for (std::size_t v = 0; v < moments.dimension(); ++v) {
    coords.push_back(Polynomial::variable(moments.dimension(), v));
  }
  return support_box(moments, coords, order);
}

CvsDD c_vs_dd(const MomentSequence& moments, const Polynomial& a,
              unsigned order) {
  const CBoundEstimate c = c_bound(moments, a);
  const RayleighBounds dd = dd_bounds(moments, a, order);
  CvsDD out;
  out.c = c.value;
  out.D = dd.D_upper;
  out.d = dd.d_lower;
  out.max_rule_gap = std::fabs(c.value - std::max(dd.D_upper, -dd.d_lower));
  out.n_used = c.n_used;
  out.N_used = order;
  return out;
}

}  // namespace momentkit

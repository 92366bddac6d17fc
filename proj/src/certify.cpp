#include "momentkit/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "momentkit/intrinsic.hpp"
#include "momentkit/rational.hpp"

namespace momentkit {

void CheckReport::record(std::string witness, double value, double bound) {
  ++attempted;
  const bool ok = value >= bound;
  if (!ok) {
    passed = false;
    violations.push_back({witness, value});
  }
  items.push_back({std::move(witness), value, bound, ok});
}

void CheckReport::merge(const CheckReport& other) {
  passed = passed && other.passed;
  violations.insert(violations.end(), other.violations.begin(),
                    other.violations.end());
  items.insert(items.end(), other.items.begin(), other.items.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  attempted += other.attempted;
  skipped += other.skipped;
}

double default_check_tolerance(const MomentSequence& moments, unsigned degree) {
  return 1e-9 * (1.0 + moments.max_abs_moment(degree));
}

namespace {

// Parentheses only around sums.
std::string factor_label(const Polynomial& p) {
  const std::string s = to_string(p);
  return p.terms().size() > 1 ? "(" + s + ")" : s;
}

std::string power_label(const Polynomial& p, unsigned k) {
  std::string s = factor_label(p);
  if (k > 1) s += "^" + std::to_string(k);
  return s;
}

void require_dimension(const MomentSequence& moments, const Polynomial& p) {
  if (p.dimension() != moments.dimension()) {
    throw Error(Errc::dimension_mismatch,
                "polynomial " + to_string(p) + " has dimension " +
                    std::to_string(p.dimension()) + ", functional has " +
                    std::to_string(moments.dimension()));
  }
}

// Localized PSD test at the largest admissible order <= order.
void record_localized(CheckReport& report, const MomentSequence& moments,
                      const Polynomial& shift, unsigned order,
                      const std::string& label) {
  const int limit = max_localized_order(moments, shift);
  if (limit < 0) {
    throw Error(Errc::degree_overflow,
                label + ": localizing polynomial of degree " +
                    std::to_string(shift.degree()) +
                    " exceeds the truncation degree " +
                    std::to_string(moments.max_degree()));
  }
  const unsigned used = std::min(order, static_cast<unsigned>(limit));
  const SymMatrix m = moment_matrix(moments, used, shift).matrix;
  const PsdVerdict v = psd_check(m);
  report.record(label + " at order " + std::to_string(used), v.min_eigenvalue,
                -v.tolerance_used);
}

}  // namespace

CheckReport product_positivity_check(const MomentSequence& moments,
                                     std::span<const FactorPair> factors,
                                     unsigned max_factors,
                                     std::optional<double> tol) {
  if (factors.empty()) {
    throw Error(Errc::invalid_argument, "product check needs at least one factor pair");
  }
  std::vector<Polynomial> alphabet;
  for (const FactorPair& f : factors) {
    require_dimension(moments, f.upper);
    require_dimension(moments, f.lower);
    alphabet.push_back(f.upper);
    alphabet.push_back(f.lower);
  }
  CheckReport report;
  report.notes.push_back("products of at most " + std::to_string(max_factors) +
                         " factors");
  const int budget = static_cast<int>(moments.max_degree());

  // Multisets as nondecreasing symbol sequences; the running product is
  // carried down the recursion.
  std::vector<unsigned> counts(alphabet.size(), 0);
  std::function<void(std::size_t, unsigned, const Polynomial&, int)> visit =
      [&](std::size_t start, unsigned size, const Polynomial& product, int degree) {
        for (std::size_t s = start; s < alphabet.size(); ++s) {
          const int deg = degree + std::max(alphabet[s].degree(), 0);
          if (deg > budget) {
            // Every extension through s is also over budget; count them all
            // as one skipped product family.
            ++report.skipped;
            continue;
          }
          const Polynomial next = product * alphabet[s];
          ++counts[s];
          std::string label = "L(";
          if (size == 0) {
            label += to_string(alphabet[s]);
          } else {
            bool first = true;
            for (std::size_t i = 0; i < alphabet.size(); ++i) {
              if (counts[i] == 0) continue;
              if (!first) label += "*";
              label += power_label(alphabet[i], counts[i]);
              first = false;
            }
          }
          label += ")";
          const double tolerance = tol.value_or(
              default_check_tolerance(moments, static_cast<unsigned>(deg)));
          report.record(label, apply(moments, next), -tolerance);
          if (size + 1 < max_factors) visit(s, size + 1, next, deg);
          --counts[s];
        }
      };
  visit(0, 0, Polynomial::constant(moments.dimension(), 1.0), 0);
  return report;
}

CheckReport cone_check(const MomentSequence& moments, const Polynomial& a,
                       const Polynomial& b, unsigned jk_max,
                       std::optional<double> tol) {
  require_dimension(moments, a);
  require_dimension(moments, b);
  const double ca = c_bound(moments, a).value;
  const double cb = c_bound(moments, b).value;
  const std::size_t d = moments.dimension();
  const Polynomial minus = Polynomial::constant(d, ca) - a;
  const Polynomial plus = Polynomial::constant(d, ca) + a;
  const Polynomial bfactor = Polynomial::constant(d, cb * cb) - b * b;
  auto tolerance = [&](int degree) {
    return tol.value_or(default_check_tolerance(moments, static_cast<unsigned>(degree)));
  };
  const int budget = static_cast<int>(moments.max_degree());
  const int da = std::max(a.degree(), 0);
  const int db = std::max(bfactor.degree(), 0);

  CheckReport report;
  report.notes.push_back("C_a = " + std::to_string(ca) + ", C_b = " +
                         std::to_string(cb));
  for (unsigned j = 0; j <= jk_max; ++j) {
    for (unsigned k = 0; j + k <= jk_max; ++k) {
      const int deg = static_cast<int>(j + k) * da;
      if (deg > budget) {
        report.skipped += 2;
        continue;
      }
      const Polynomial prod = pow(minus, j) * pow(plus, k);
      const std::string body = "(C_a - a)^" + std::to_string(j) +
                               "*(C_a + a)^" + std::to_string(k);
      report.record("L(" + body + ")", apply(moments, prod), -tolerance(deg));
      if (deg + db > budget) {
        ++report.skipped;
        continue;
      }
      report.record("L((C_b^2 - b^2)*" + body + ")",
                    apply(moments, bfactor * prod), -tolerance(deg + db));
    }
  }
  if (report.attempted == 0) {
    throw Error(Errc::degree_overflow, "cone check: every product exceeds the truncation");
  }
  return report;
}

CheckReport ball_check(const MomentSequence& moments,
                       std::span<const Polynomial> coordinate_polys, double r,
                       unsigned order, std::optional<double> tol) {
  if (coordinate_polys.empty()) {
    throw Error(Errc::invalid_argument, "ball check needs coordinate polynomials");
  }
  const std::size_t d = moments.dimension();
  Polynomial sq(d);
  for (const Polynomial& p : coordinate_polys) {
    require_dimension(moments, p);
    sq = sq + p * p;
  }
  CheckReport report;
  const double r2 = r * r;
  const Polynomial shift = Polynomial::constant(d, r2) - sq;
  const PsdVerdict v = psd_check(moment_matrix(moments, order, shift).matrix);
  report.record("r^2 M_" + std::to_string(order) + " - M_" +
                    std::to_string(order) + "(" + to_string(sq) + ") PSD",
                v.min_eigenvalue, -v.tolerance_used);
  const CBoundEstimate c = c_bound(moments, sq);
  const double tolerance = tol.value_or(default_check_tolerance(
      moments, 2 * c.n_used * static_cast<unsigned>(std::max(sq.degree(), 0))));
  // Recorded as r^2 - C >= -tol.
  report.record("r^2 - C_{" + to_string(sq) + "} with n_used = " +
                    std::to_string(c.n_used) + " (C = " +
                    std::to_string(c.value) + ")",
                r2 - c.value, -tolerance);
  return report;
}

CheckReport growth_check(const MomentSequence& moments,
                         std::span<const GrowthGenerator> generators,
                         std::optional<double> tol) {
  if (generators.empty()) {
    throw Error(Errc::invalid_argument, "growth check needs generators");
  }
  CheckReport report;
  for (const GrowthGenerator& g : generators) {
    require_dimension(moments, g.a);
    const int deg = g.a.degree();
    const unsigned n_max = deg <= 0 ? std::max(moments.half_degree(), 1u)
                                    : moments.half_degree() / deg;
    if (n_max == 0) {
      throw Error(Errc::degree_overflow,
                  "growth check: " + to_string(g.a) + " has no power within the truncation");
    }
    const Polynomial a2 = g.a * g.a;
    Polynomial power = a2;
    for (unsigned n = 1; n <= n_max; ++n) {
      if (n > 1) power = power * a2;
      const double lhs = apply(moments, power);
      const double rhs = g.gamma * std::pow(g.d, 2.0 * n);
      const double tolerance = tol.value_or(default_check_tolerance(
          moments, 2 * n * static_cast<unsigned>(std::max(deg, 0))));
      report.record("gamma*d^" + std::to_string(2 * n) + " - L(" +
                        power_label(g.a, 2 * n) + ") at n = " + std::to_string(n),
                    rhs - lhs, -tolerance);
    }
  }
  return report;
}

CheckReport weak_absolute_value_check(const MomentSequence& moments,
                                      std::span<const AbsoluteValueEntry> entries,
                                      double c_bound_constant,
                                      std::optional<double> tol) {
  if (entries.empty()) {
    throw Error(Errc::invalid_argument, "absolute value check needs entries");
  }
  CheckReport report;
  for (const AbsoluteValueEntry& e : entries) {
    require_dimension(moments, e.a);
    const CBoundEstimate c = c_bound(moments, e.a);
    const double tolerance = tol.value_or(default_check_tolerance(
        moments, 2 * c.n_used * static_cast<unsigned>(std::max(e.a.degree(), 0))));
    const std::string name = to_string(e.a);
    report.record("v(" + name + ") - C_{" + name + "} (n_used = " +
                      std::to_string(c.n_used) + ")",
                  e.v - c.value, -tolerance);
    report.record("C*v(" + name + ") - |L(" + name + ")|",
                  c_bound_constant * e.v - std::fabs(apply(moments, e.a)),
                  -tolerance);
  }
  return report;
}

CheckReport schmudgen_check(const MomentSequence& moments,
                            std::span<const Polynomial> constraints,
                            unsigned order) {
  const std::size_t m = constraints.size();
  if (m > 20) throw Error(Errc::invalid_argument, "too many constraints");
  for (const Polynomial& r : constraints) require_dimension(moments, r);
  CheckReport report;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Polynomial product = Polynomial::constant(moments.dimension(), 1.0);
    std::string label = "subset {";
    bool first = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (!(mask >> j & 1u)) continue;
      product = product * constraints[j];
      if (!first) label += ", ";
      label += to_string(constraints[j]);
      first = false;
    }
    label += "}";
    record_localized(report, moments, product, order, label);
  }
  return report;
}

CheckReport interval_membership_check(const MomentSequence& moments,
                                      std::span<const IntervalEntry> entries,
                                      unsigned order) {
  if (entries.empty()) {
    throw Error(Errc::invalid_argument, "interval check needs entries");
  }
  CheckReport report;
  const std::size_t d = moments.dimension();
  for (const IntervalEntry& e : entries) {
    require_dimension(moments, e.a);
    const std::string name = to_string(e.a);
    CheckReport local;
    record_localized(local, moments, e.a - Polynomial::constant(d, e.lower),
                     order, "lower: " + name + " - m");
    record_localized(local, moments, Polynomial::constant(d, e.upper) - e.a,
                     order, "upper: M - " + name);
    const double bound = std::max(std::fabs(e.lower), std::fabs(e.upper));
    record_localized(local, moments,
                     Polynomial::constant(d, bound * bound) - e.a * e.a, order,
                     "square: max(|m|,|M|)^2 - " + name + "^2");
    if (local.items[0].passed && local.items[1].passed && !local.items[2].passed) {
      local.notes.push_back("square condition failed although both interval "
                            "conditions hold for " + name);
    }
    report.merge(local);
  }
  return report;
}

CheckReport identity_suite() {
  using Q = mpq_class;
  const RationalPolynomial big_m = RationalPolynomial::variable(2, 0);
  const RationalPolynomial a = RationalPolynomial::variable(2, 1);
  auto constant = [](const Q& c) { return RationalPolynomial::constant(2, c); };
  auto count_terms = [](const RationalPolynomial& p) {
    return static_cast<double>(p.terms().size());
  };

  CheckReport report;
  const RationalPolynomial u = big_m + a;  // M + a
  const RationalPolynomial v = big_m - a;  // M - a

  {
    const RationalPolynomial lhs = v * u * u + u * v * v;
    const RationalPolynomial rhs = constant(2) * big_m * (big_m * big_m - a * a);
    const RationalPolynomial expanded =
        constant(2) * pow(big_m, 3) - constant(2) * big_m * a * a;
    report.record("(M-a)(M+a)^2 + (M+a)(M-a)^2 - 2M(M^2-a^2): nonzero terms",
                  -count_terms(lhs - rhs), 0.0);
    report.record("2M(M^2-a^2) - (2M^3 - 2Ma^2): nonzero terms",
                  -count_terms(rhs - expanded), 0.0);
  }

  const RationalPolynomial two_m = constant(2) * big_m;
  for (unsigned n = 2; n <= 5; ++n) {
    const Q nn(n);
    const RationalPolynomial c = two_m * two_m;  // (2M)^2
    RationalPolynomial lhs(2);
    for (unsigned j = 0; j <= n; ++j) {
      for (unsigned k = 0; k <= n; ++k) {
        const Q jq(j);
        const Q kq(k);
        const Q first = (jq * jq + kq * kq) / (nn * (nn - 1));
        const Q second = Q(2) * jq * kq / (nn * nn);
        const Q binom = Q(static_cast<unsigned long>(binomial(n, j))) *
                        Q(static_cast<unsigned long>(binomial(n, k)));
        const RationalPolynomial weight = constant(Q((first - second) * binom)) * c;
        lhs = lhs + weight * pow(u, j) * pow(v, n - j) * pow(v, k) * pow(u, n - k);
      }
    }
    const RationalPolynomial tail =
        constant(Q(1) / (nn - 1)) * pow(two_m, 2 * n + 1);
    const RationalPolynomial rhs =
        pow(two_m, 2 * n) * constant(4) * a * a + tail * u + tail * v;
    report.record("cone identity n = " + std::to_string(n) + ": nonzero terms",
                  -count_terms(lhs - rhs), 0.0);
  }
  return report;
}

}  // namespace momentkit

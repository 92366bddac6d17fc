#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "momentkit/moments.hpp"

namespace momentkit {

// Generator pair such as (C_a - a, C_a + a) or (D_a - a, a - d_a).
struct FactorPair {
  Polynomial upper;
  Polynomial lower;
};

struct Violation {
  std::string witness;
  double value = 0.0;
};

// One evaluated inequality: `value` must be >= `bound` (PSD checks use the
// minimum eigenvalue against minus the tolerance).
struct CheckItem {
  std::string witness;
  double value = 0.0;
  double bound = 0.0;
  bool passed = false;
};

struct CheckReport {
  bool passed = true;
  std::vector<Violation> violations;
  std::vector<CheckItem> items;
  std::vector<std::string> notes;
  std::size_t attempted = 0;
  std::size_t skipped = 0;  // dropped because the truncation was too short

  void record(std::string witness, double value, double bound);
  void merge(const CheckReport& other);
};

inline constexpr unsigned kDefaultMaxFactors = 6;

// 1e-9 * (1 + largest |moment| of degree <= degree).
double default_check_tolerance(const MomentSequence& moments, unsigned degree);

// L(f_1 ... f_n) >= -tol for every multiset of at most max_factors factors
// drawn from the upper/lower members of the pairs.
CheckReport product_positivity_check(const MomentSequence& moments,
                                     std::span<const FactorPair> factors,
                                     unsigned max_factors = kDefaultMaxFactors,
                                     std::optional<double> tol = std::nullopt);

// L((C_a - a)^j (C_a + a)^k) >= 0 and L((C_b^2 - b^2)(C_a - a)^j (C_a + a)^k)
// >= 0 for j + k <= jk_max, with C_a, C_b the truncated growth bounds.
CheckReport cone_check(const MomentSequence& moments, const Polynomial& a,
                       const Polynomial& b, unsigned jk_max,
                       std::optional<double> tol = std::nullopt);

// Two conditions for support in the ball of radius r:
// r^2 M_N - M_N(sum a_i^2) is PSD, and C_{sum a_i^2} <= r^2.
CheckReport ball_check(const MomentSequence& moments,
                       std::span<const Polynomial> coordinate_polys, double r,
                       unsigned order, std::optional<double> tol = std::nullopt);

struct GrowthGenerator {
  Polynomial a;
  double d = 0.0;
  double gamma = 0.0;
};

// L(a^{2n}) <= gamma * d^{2n} for every achievable n >= 1.
CheckReport growth_check(const MomentSequence& moments,
                         std::span<const GrowthGenerator> generators,
                         std::optional<double> tol = std::nullopt);

struct AbsoluteValueEntry {
  Polynomial a;
  double v = 0.0;
};

// C_a <= v(a) and |L(a)| <= C * v(a) for each listed a.
CheckReport weak_absolute_value_check(const MomentSequence& moments,
                                      std::span<const AbsoluteValueEntry> entries,
                                      double c_bound_constant,
                                      std::optional<double> tol = std::nullopt);

// For every subset S of the constraints (empty product included), the
// localized matrix of prod_{j in S} R_j at the largest order <= N is PSD.
CheckReport schmudgen_check(const MomentSequence& moments,
                            std::span<const Polynomial> constraints,
                            unsigned order);

struct IntervalEntry {
  Polynomial a;
  double lower = 0.0;
  double upper = 0.0;
};

// a - m_a, M_a - a and max(|m_a|, |M_a|)^2 - a^2 in the truncated Q_L.
CheckReport interval_membership_check(const MomentSequence& moments,
                                      std::span<const IntervalEntry> entries,
                                      unsigned order);

// Exact rational verification of the two polynomial identities behind the
// interval and cone criteria.
CheckReport identity_suite();

}  // namespace momentkit

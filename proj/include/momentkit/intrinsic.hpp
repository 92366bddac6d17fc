#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "momentkit/linalg.hpp"
#include "momentkit/moments.hpp"

namespace momentkit {

// Truncated growth bound sup_n L(a^{2n})^{1/(2n)} over n = 1..n_used.
struct CBoundEstimate {
  double value = 0.0;
  unsigned n_used = 0;
  std::vector<double> per_n;  // per_n[k] belongs to n = k + 1
  bool clamped = false;       // some L(a^{2n}) was negative and read as 0
};

// n_used = floor(N_max / deg a), optionally capped by max_power. Constants
// are handled directly (|c| for c != 0, 0 for the zero polynomial) with
// n_used = max(N_max, 1).
CBoundEstimate c_bound(const MomentSequence& moments, const Polynomial& a,
                       std::optional<unsigned> max_power = std::nullopt);

struct RayleighBounds {
  double d_lower = 0.0;
  double D_upper = 0.0;
  unsigned N_used = 0;
  std::size_t effective_rank = 0;
};

// Extremes of L(a x^2) / L(x^2) over x of degree <= order, as the pencil
// (M_N(a), M_N).
RayleighBounds dd_bounds(const MomentSequence& moments, const Polynomial& a,
                         unsigned order);

// D_upper of dd_bounds(a^2): the truncated sup of L(a^2 b^2) / L(b^2).
double r_bound(const MomentSequence& moments, const Polynomial& a,
               unsigned order);

PsdVerdict ql_membership_psd(const MomentSequence& moments, const Polynomial& a,
                             unsigned order);

inline constexpr double kDefaultQlSlack = 0.05;

struct QlCBoundVerdict {
  bool holds = false;      // c_shift <= c_a * (1 + slack)
  bool holds_raw = false;  // c_shift <= c_a
  double c_a = 0.0;
  double c_shift = 0.0;
  unsigned n_used = 0;
  double slack = kDefaultQlSlack;
};

// a is in Q_L iff C_{C_a - a} <= C_a, evaluated with truncated bounds.
QlCBoundVerdict ql_membership_cbound(const MomentSequence& moments,
                                     const Polynomial& a,
                                     double slack = kDefaultQlSlack);

enum class ArchimedeanMode { linear, square };

struct ArchimedeanBound {
  // Smallest M with M - a (resp. M - a^2) in the truncated Q_L, read off the
  // range-restricted pencil.
  double value = 0.0;
  // Independent bracket: bisection on PSD-ness of the localized matrix.
  double bisection_value = 0.0;
  unsigned N_used = 0;
};

inline constexpr double kDefaultArchimedeanCeiling = 1e12;

ArchimedeanBound archimedean_bound(
    const MomentSequence& moments, const Polynomial& a, unsigned order,
    ArchimedeanMode mode, double ceiling = kDefaultArchimedeanCeiling);

struct SupportEntry {
  Polynomial poly;
  double lower = 0.0;
  double upper = 0.0;
  unsigned N_used = 0;
  std::optional<std::string> error;  // set when this entry could not be bounded
};

struct SupportBox {
  std::vector<SupportEntry> entries;
};

// Per polynomial (d_a, D_a) from dd_bounds at order N; failures are recorded
// on the entry rather than thrown.
SupportBox support_box(const MomentSequence& moments,
                       std::span<const Polynomial> polys, unsigned order);
// Coordinate variables.
SupportBox support_box(const MomentSequence& moments, unsigned order);

struct CvsDD {
  double c = 0.0;
  double D = 0.0;
  double d = 0.0;
  double max_rule_gap = 0.0;  // |c - max(D, -d)|
  unsigned n_used = 0;
  unsigned N_used = 0;
};

CvsDD c_vs_dd(const MomentSequence& moments, const Polynomial& a,
              unsigned order);

}  // namespace momentkit

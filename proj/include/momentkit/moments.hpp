#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "momentkit/linalg.hpp"
#include "momentkit/poly.hpp"

namespace momentkit {

struct Atom {
  std::vector<double> point;
  double weight = 0.0;
};

// Uniform (Lebesgue) density on a box, integrated with a tensor
// Gauss-Legendre rule of `order` points per axis.
struct BoxSpec {
  std::vector<std::pair<double, double>> bounds;
  unsigned order = 1;
};

struct MeasureSpec {
  std::variant<std::vector<Atom>, BoxSpec> data;

  std::size_t dimension() const;
  // Throws on nonpositive weights, inverted bounds, zero order, or ragged
  // atom points.
  void validate() const;
};

struct GaussRule {
  std::vector<double> nodes;  // ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [lo, hi] (Newton on the Legendre
// three-term recurrence); exact for polynomials of degree <= 2n - 1.
GaussRule gauss_legendre(unsigned n, double lo = -1.0, double hi = 1.0);

// Truncated linear functional L, stored densely over every multi-index of
// total degree <= max_degree in graded-lex order.
//
// Construction normalizes: when L(1) > 0 all values are divided by L(1), so
// L(1) = 1 afterwards and was_rescaled() records whether a division took
// place. When L(1) <= 0 the raw values are kept and normalized() is false;
// operations that assume L(1) = 1 refuse such input.
class MomentSequence {
 public:
  // `values` lists L(x^alpha) for enumerate_monomials(dim, max_degree).
  MomentSequence(std::size_t dim, unsigned max_degree,
                 std::vector<double> values);

  std::size_t dimension() const { return dim_; }
  unsigned max_degree() const { return max_degree_; }
  unsigned half_degree() const { return max_degree_ / 2; }
  bool normalized() const { return normalized_; }
  bool was_rescaled() const { return rescaled_; }
  double original_mass() const { return original_mass_; }

  // L(x^alpha); throws Errc::degree_overflow beyond the truncation.
  double value(const MultiIndex& alpha) const;
  std::span<const double> values() const { return values_; }

  // Largest |L(x^alpha)| over |alpha| <= degree (clamped to max_degree).
  double max_abs_moment(unsigned degree) const;

  MomentSequence truncated(unsigned new_max_degree) const;

  void require_normalized(const char* operation) const;

 private:
  std::size_t dim_;
  unsigned max_degree_;
  std::vector<double> values_;
  bool normalized_ = false;
  bool rescaled_ = false;
  double original_mass_ = 0.0;
};

// Oracle direction: moments of a known measure. Atomic specs sum weights
// times monomial values; box specs require order >= max_degree/2 + 1.
MomentSequence from_measure(const MeasureSpec& spec, unsigned max_degree);

// sum_gamma coeff(gamma) * L(x^gamma).
double apply(const MomentSequence& moments, const Polynomial& p);

struct MomentMatrix {
  std::vector<MultiIndex> basis;
  SymMatrix matrix;
  Polynomial shift;
};

// entry(alpha, beta) = L(shift * x^(alpha+beta)) over monomials of degree
// <= order. Requires 2*order + deg(shift) <= max_degree.
MomentMatrix moment_matrix(const MomentSequence& moments, unsigned order,
                           const Polynomial& shift);
MomentMatrix moment_matrix(const MomentSequence& moments, unsigned order);

// Largest order N with 2N + deg(shift) <= max_degree, or -1 if none.
int max_localized_order(const MomentSequence& moments, const Polynomial& shift);

PsdVerdict psd_functional_check(const MomentSequence& moments, unsigned order);

}  // namespace momentkit

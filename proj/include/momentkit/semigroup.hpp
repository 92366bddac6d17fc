#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "momentkit/certify.hpp"
#include "momentkit/intrinsic.hpp"
#include "momentkit/linalg.hpp"

namespace momentkit {

// Element (m, n) of the involution semigroup N^2 with (m,n)(p,q) =
// (m+p, n+q). Its characters are z -> z^n conj(z)^m.
//
// The involution is the swap (m,n)* = (n,m). The identity map would force
// every character to be real (alpha(s*) = conj alpha(s)), which cannot
// describe points of the complex disc; the swap satisfies that axiom and
// leaves the diagonal (n,n) untouched.
struct SemigroupElement {
  unsigned m = 0;
  unsigned n = 0;

  SemigroupElement operator*(const SemigroupElement& o) const {
    return {m + o.m, n + o.n};
  }
  SemigroupElement star() const { return {n, m}; }
  SemigroupElement power(unsigned k) const { return {m * k, n * k}; }

  friend bool operator==(const SemigroupElement&, const SemigroupElement&) = default;
};

SemigroupElement involution(const SemigroupElement& s);

// f(m, n) for 0 <= m, n <= max_level.
class ComplexMomentFunction {
 public:
  // values[m * (max_level + 1) + n] = f(m, n). Rejects tables that are not
  // Hermitian (f(n,m) = conj f(m,n) to 1e-12 relative) or whose f(0,0) is not
  // real positive.
  ComplexMomentFunction(unsigned max_level,
                        std::vector<std::complex<double>> values);

  unsigned max_level() const { return max_level_; }
  std::complex<double> operator()(unsigned m, unsigned n) const;
  std::complex<double> operator()(const SemigroupElement& s) const {
    return (*this)(s.m, s.n);
  }
  std::span<const std::complex<double>> values() const { return values_; }

 private:
  unsigned max_level_;
  std::vector<std::complex<double>> values_;
};

struct ComplexAtom {
  std::complex<double> z;
  double weight = 0.0;
};

// f(m, n) = sum_i w_i z_i^n conj(z_i)^m.
ComplexMomentFunction from_complex_atoms(std::span<const ComplexAtom> atoms,
                                         unsigned max_level);

// Hermitian kernel H[s_j, s_k] = f(s_j* s_k) over s = (m, n) with m, n <=
// level, tested through the real embedding [[Re, -Im], [Im, Re]].
PsdVerdict psd_function_check(const ComplexMomentFunction& f, unsigned level,
                              std::optional<double> tol = std::nullopt);

// Truncated sup_n f(s^n (s*)^n)^{1/(2n)}.
CBoundEstimate r_s_bound(const ComplexMomentFunction& f,
                         const SemigroupElement& s);

// PSD at the largest coverable level and f(n,n) <= C r^{2n} for n <= M.
CheckReport disc_check(const ComplexMomentFunction& f, double r, double c,
                       std::optional<double> tol = std::nullopt);

}  // namespace momentkit

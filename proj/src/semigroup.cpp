#include "momentkit/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace momentkit {

SemigroupElement involution(const SemigroupElement& s) { return s.star(); }

ComplexMomentFunction::ComplexMomentFunction(
    unsigned max_level, std::vector<std::complex<double>> values)
    : max_level_(max_level), values_(std::move(values)) {
  const std::size_t side = max_level_ + 1;
  if (values_.size() != side * side) {
    throw Error(Errc::coverage, "complex moment table has " +
                                    std::to_string(values_.size()) +
                                    " entries, expected " +
                                    std::to_string(side * side));
  }
  double scale = 0.0;
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(Errc::non_finite, "complex moment is not finite");
    }
    scale = std::max(scale, std::abs(v));
  }
  const std::complex<double> f00 = values_[0];
  if (!(f00.real() > 0.0) || std::fabs(f00.imag()) > 1e-12 * (1.0 + scale)) {
    throw Error(Errc::invalid_argument, "f(0,0) must be real and positive");
  }
  for (std::size_t m = 0; m < side; ++m) {
    for (std::size_t n = m; n < side; ++n) {
      const auto a = values_[m * side + n];
      const auto b = values_[n * side + m];
      if (std::abs(a - std::conj(b)) > 1e-12 * (1.0 + scale)) {
        throw Error(Errc::invalid_argument,
                    "table is not Hermitian at (" + std::to_string(m) + "," +
                        std::to_string(n) + ")");
      }
    }
  }
}

std::complex<double> ComplexMomentFunction::operator()(unsigned m,
                                                       unsigned n) const {
  if (m > max_level_ || n > max_level_) {
    throw Error(Errc::coverage, "f(" + std::to_string(m) + "," + std::to_string(n) +
                                    ") is beyond level " + std::to_string(max_level_));
  }
  return values_[m * (max_level_ + 1) + n];
}

ComplexMomentFunction from_complex_atoms(std::span<const ComplexAtom> atoms,
                                         unsigned max_level) {
  if (atoms.empty()) throw Error(Errc::invalid_argument, "no atoms");
  const std::size_t side = max_level + 1;
  std::vector<std::complex<double>> values(side * side);
  for (const ComplexAtom& atom : atoms) {
    if (!(atom.weight > 0.0)) {
      throw Error(Errc::invalid_argument, "atom weights must be positive");
    }
    std::vector<std::complex<double>> zp(side, 1.0);
    for (std::size_t k = 1; k < side; ++k) zp[k] = zp[k - 1] * atom.z;
    for (std::size_t m = 0; m < side; ++m) {
      for (std::size_t n = 0; n < side; ++n) {
        values[m * side + n] += atom.weight * zp[n] * std::conj(zp[m]);
      }
    }
  }
  // Mirror the upper triangle so the table is Hermitian bit for bit.
  for (std::size_t m = 0; m < side; ++m) {
    values[m * side + m].imag(0.0);
    for (std::size_t n = m + 1; n < side; ++n) {
      values[n * side + m] = std::conj(values[m * side + n]);
    }
  }
  return ComplexMomentFunction(max_level, std::move(values));
}

PsdVerdict psd_function_check(const ComplexMomentFunction& f, unsigned level,
                              std::optional<double> tol) {
  if (2 * level > f.max_level()) {
    throw Error(Errc::coverage, "level " + std::to_string(level) +
                                    " needs the table through " +
                                    std::to_string(2 * level) + ", have " +
                                    std::to_string(f.max_level()));
  }
  std::vector<SemigroupElement> elems;
  for (unsigned m = 0; m <= level; ++m) {
    for (unsigned n = 0; n <= level; ++n) elems.push_back({m, n});
  }
  const std::size_t k = elems.size();
  SymMatrix embed(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = j; l < k; ++l) {
      const std::complex<double> h = f(elems[j].star() * elems[l]);
      embed.set(j, l, h.real());
      embed.set(k + j, k + l, h.real());
      if (j == l) continue;
      // Lower-left block carries Im H, upper-right -Im H = (Im H)^T.
      embed.set(k + l, j, -h.imag());
      embed.set(k + j, l, h.imag());
    }
  }
  return tol ? psd_check(embed, *tol) : psd_check(embed);
}

CBoundEstimate r_s_bound(const ComplexMomentFunction& f,
                         const SemigroupElement& s) {
  const unsigned step = s.m + s.n;
  const unsigned n_used = step == 0 ? std::max(f.max_level(), 1u)
                                    : f.max_level() / step;
  if (n_used == 0) {
    throw Error(Errc::coverage, "table does not cover s (s*) for s = (" +
                                    std::to_string(s.m) + "," +
                                    std::to_string(s.n) + ")");
  }
  CBoundEstimate est;
  est.n_used = n_used;
  for (unsigned n = 1; n <= n_used; ++n) {
    // s^n (s*)^n = (n(m+n), n(m+n)).
    const SemigroupElement e = s.power(n) * s.star().power(n);
    double v = step == 0 ? f(0, 0).real() : f(e).real();
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

CheckReport disc_check(const ComplexMomentFunction& f, double r, double c,
                       std::optional<double> tol) {
  if (!(r > 0.0) || !(c > 0.0)) {
    throw Error(Errc::invalid_argument, "disc check needs r > 0 and C > 0");
  }
  CheckReport report;
  const unsigned level = f.max_level() / 2;
  const PsdVerdict v = psd_function_check(f, level, tol);
  report.record("f positive semidefinite at level " + std::to_string(level),
                v.min_eigenvalue, -v.tolerance_used);
  double scale = 0.0;
  for (unsigned n = 0; n <= f.max_level(); ++n) {
    scale = std::max(scale, std::fabs(f(n, n).real()));
  }
  const double t = tol.value_or(1e-9 * (1.0 + scale));
  for (unsigned n = 0; n <= f.max_level(); ++n) {
    const double bound = c * std::pow(r, 2.0 * n);
    report.record("C r^" + std::to_string(2 * n) + " - f(" + std::to_string(n) +
                      "," + std::to_string(n) + ")",
                  bound - f(n, n).real(), -t);
  }
  return report;
}

}  // namespace momentkit

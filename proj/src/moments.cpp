#include "momentkit/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace momentkit {

std::size_t MeasureSpec::dimension() const {
  if (const auto* atoms = std::get_if<std::vector<Atom>>(&data)) {
    return atoms->empty() ? 0 : atoms->front().point.size();
  }
  return std::get<BoxSpec>(data).bounds.size();
}

void MeasureSpec::validate() const {
  if (const auto* atoms = std::get_if<std::vector<Atom>>(&data)) {
    if (atoms->empty()) throw Error(Errc::invalid_argument, "measure has no atoms");
    const std::size_t d = atoms->front().point.size();
    if (d == 0) throw Error(Errc::invalid_argument, "atom point is empty");
    for (const Atom& a : *atoms) {
      if (a.point.size() != d) {
        throw Error(Errc::dimension_mismatch, "atom points differ in length");
      }
      if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
        throw Error(Errc::invalid_argument, "atom weights must be positive");
      }
      for (double x : a.point) {
        if (!std::isfinite(x)) throw Error(Errc::non_finite, "atom point is not finite");
      }
    }
    return;
  }
  const BoxSpec& box = std::get<BoxSpec>(data);
  if (box.bounds.empty()) throw Error(Errc::invalid_argument, "box has no bounds");
  if (box.order < 1) throw Error(Errc::invalid_argument, "quadrature order must be >= 1");
  for (const auto& [lo, hi] : box.bounds) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw Error(Errc::non_finite, "box bounds must be finite");
    }
    if (lo > hi) throw Error(Errc::invalid_argument, "box bound has lo > hi");
  }
}

GaussRule gauss_legendre(unsigned n, double lo, double hi) {
  if (n == 0) throw Error(Errc::invalid_argument, "Gauss rule needs n >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-15) break;
    }
    // Refresh the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (unsigned k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

MomentSequence::MomentSequence(std::size_t dim, unsigned max_degree,
                               std::vector<double> values)
    : dim_(dim), max_degree_(max_degree), values_(std::move(values)) {
  if (dim == 0) throw Error(Errc::invalid_argument, "dimension must be >= 1");
  if (max_degree % 2 != 0) {
    throw Error(Errc::invalid_argument,
                "max_degree must be even, got " + std::to_string(max_degree));
  }
  const std::size_t expected = binomial(max_degree + dim, dim);
  if (values_.size() != expected) {
    throw Error(Errc::coverage, "moment table has " +
                                    std::to_string(values_.size()) +
                                    " entries, expected " +
                                    std::to_string(expected));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(Errc::non_finite, "moment value is not finite");
  }
  original_mass_ = values_.front();
  if (original_mass_ > 0.0) {
    normalized_ = true;
    if (original_mass_ != 1.0) {
      rescaled_ = true;
      for (double& v : values_) v /= original_mass_;
      values_.front() = 1.0;
    }
  }
}

double MomentSequence::value(const MultiIndex& alpha) const {
  if (alpha.dimension() != dim_) {
    throw Error(Errc::dimension_mismatch, "multi-index length does not match");
  }
  if (alpha.degree() > max_degree_) {
    throw Error(Errc::degree_overflow,
                "monomial of degree " + std::to_string(alpha.degree()) +
                    " exceeds stored degree " + std::to_string(max_degree_));
  }
  return values_[graded_lex_rank(alpha)];
}

double MomentSequence::max_abs_moment(unsigned degree) const {
  const std::size_t count =
      binomial(std::min(degree, max_degree_) + dim_, dim_);
  double m = 0.0;
  for (std::size_t i = 0; i < count; ++i) m = std::max(m, std::fabs(values_[i]));
  return m;
}

MomentSequence MomentSequence::truncated(unsigned new_max_degree) const {
  if (new_max_degree > max_degree_) {
    throw Error(Errc::degree_overflow, "cannot extend a truncation");
  }
  std::vector<double> v(values_.begin(),
                        values_.begin() + binomial(new_max_degree + dim_, dim_));
  if (!normalized_) return MomentSequence(dim_, new_max_degree, std::move(v));
  MomentSequence out(dim_, new_max_degree, std::move(v));
  out.rescaled_ = rescaled_;
  out.original_mass_ = original_mass_;
  return out;
}

void MomentSequence::require_normalized(const char* operation) const {
  if (!normalized_) {
    throw Error(Errc::not_normalized,
                std::string(operation) + " requires L(1) = 1, but L(1) = " +
                    std::to_string(values_.front()));
  }
}

MomentSequence from_measure(const MeasureSpec& spec, unsigned max_degree) {
  spec.validate();
  const std::size_t d = spec.dimension();
  const auto basis = enumerate_monomials(d, max_degree);
  std::vector<double> values(basis.size(), 0.0);

  if (const auto* atoms = std::get_if<std::vector<Atom>>(&spec.data)) {
    for (const Atom& atom : *atoms) {
      // powers[v][e] = point[v]^e
      std::vector<std::vector<double>> powers(d, std::vector<double>(max_degree + 1, 1.0));
      for (std::size_t v = 0; v < d; ++v) {
        for (unsigned e = 1; e <= max_degree; ++e) {
          powers[v][e] = powers[v][e - 1] * atom.point[v];
        }
      }
      for (std::size_t i = 0; i < basis.size(); ++i) {
        double m = atom.weight;
        for (std::size_t v = 0; v < d; ++v) m *= powers[v][basis[i][v]];
        values[i] += m;
      }
    }
    return MomentSequence(d, max_degree, std::move(values));
  }

  const BoxSpec& box = std::get<BoxSpec>(spec.data);
  if (2 * box.order < max_degree + 1) {
    throw Error(Errc::invalid_argument,
                "quadrature order " + std::to_string(box.order) +
                    " is exact only through degree " +
                    std::to_string(2 * box.order - 1) + " < max_degree " +
                    std::to_string(max_degree) + "; need order >= " +
                    std::to_string(max_degree / 2 + 1));
  }
  // The tensor rule factorizes: L(x^alpha) = prod_v int x_v^alpha_v.
  std::vector<std::vector<double>> axis(d, std::vector<double>(max_degree + 1, 0.0));
  for (std::size_t v = 0; v < d; ++v) {
    const GaussRule rule = gauss_legendre(box.order, box.bounds[v].first,
                                          box.bounds[v].second);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      double p = rule.weights[q];
      for (unsigned e = 0; e <= max_degree; ++e) {
        axis[v][e] += p;
        p *= rule.nodes[q];
      }
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double m = 1.0;
    for (std::size_t v = 0; v < d; ++v) m *= axis[v][basis[i][v]];
    values[i] = m;
  }
  return MomentSequence(d, max_degree, std::move(values));
}

double apply(const MomentSequence& moments, const Polynomial& p) {
  if (p.dimension() != moments.dimension()) {
    throw Error(Errc::dimension_mismatch, "polynomial dimension " +
                                              std::to_string(p.dimension()) +
                                              " vs functional dimension " +
                                              std::to_string(moments.dimension()));
  }
  if (p.degree() > static_cast<int>(moments.max_degree())) {
    throw Error(Errc::degree_overflow,
                "polynomial of degree " + std::to_string(p.degree()) +
                    " exceeds the truncation degree " +
                    std::to_string(moments.max_degree()));
  }
  double sum = 0.0;
  for (const auto& [idx, c] : p.terms()) sum += c * moments.value(idx);
  return sum;
}

int max_localized_order(const MomentSequence& moments, const Polynomial& shift) {
  const int budget = static_cast<int>(moments.max_degree()) -
                     std::max(shift.degree(), 0);
  return budget < 0 ? -1 : budget / 2;
}

MomentMatrix moment_matrix(const MomentSequence& moments, unsigned order,
                           const Polynomial& shift) {
  if (shift.dimension() != moments.dimension()) {
    throw Error(Errc::dimension_mismatch, "shift dimension does not match");
  }
  const int limit = max_localized_order(moments, shift);
  if (limit < 0 || order > static_cast<unsigned>(limit)) {
    throw Error(Errc::degree_overflow,
                "moment matrix of order " + std::to_string(order) +
                    " with shift degree " + std::to_string(shift.degree()) +
                    " needs moments beyond degree " +
                    std::to_string(moments.max_degree()));
  }
  MomentMatrix out{enumerate_monomials(moments.dimension(), order),
                   SymMatrix(binomial(order + moments.dimension(),
                                      moments.dimension())),
                   shift};
  const std::size_t n = out.basis.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const MultiIndex sum = out.basis[i] + out.basis[j];
      double v = 0.0;
      for (const auto& [idx, c] : shift.terms()) v += c * moments.value(sum + idx);
      out.matrix.set(i, j, v);
    }
  }
  return out;
}

MomentMatrix moment_matrix(const MomentSequence& moments, unsigned order) {
  return moment_matrix(moments, order,
                       Polynomial::constant(moments.dimension(), 1.0));
}

PsdVerdict psd_functional_check(const MomentSequence& moments, unsigned order) {
  return psd_check(moment_matrix(moments, order).matrix);
}

}  // namespace momentkit

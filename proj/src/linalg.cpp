#include "momentkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "momentkit/error.hpp"

namespace momentkit {

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SymMatrix m(rows.size());
  for (const auto& r : rows) {
    if (r.size() != rows.size()) {
      throw Error(Errc::dimension_mismatch, "matrix rows must be square");
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i; j < rows.size(); ++j) {
      m.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
    }
  }
  return m;
}

SymMatrix SymMatrix::identity(std::size_t order) {
  SymMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m.set(i, i, 1.0);
  return m;
}

double SymMatrix::max_abs() const {
  double r = 0.0;
  for (double v : data_) r = std::max(r, std::fabs(v));
  return r;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  if (other.n_ != n_) throw Error(Errc::dimension_mismatch, "matrix orders differ");
  SymMatrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += other.data_[i];
  return r;
}

SymMatrix SymMatrix::operator-(const SymMatrix& other) const {
  if (other.n_ != n_) throw Error(Errc::dimension_mismatch, "matrix orders differ");
  SymMatrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= other.data_[i];
  return r;
}

SymMatrix operator*(double s, const SymMatrix& m) {
  SymMatrix r(m);
  for (double& v : r.data_) v *= s;
  return r;
}

EigenDecomposition sym_eig(const SymMatrix& input) {
  const std::size_t n = input.order();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = input(i, j);
      if (!std::isfinite(v)) {
        throw Error(Errc::non_finite, "matrix entry (" + std::to_string(i) +
                                          "," + std::to_string(j) +
                                          ") is not finite");
      }
      a[i * n + j] = v;
    }
  }
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double norm = input.frobenius_norm();
  const double target = 1e-15 * norm;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  for (int sweep = 0; sweep < 100 && n > 1; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    }
    if (std::sqrt(2.0 * off) <= target) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::fabs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return at(i, i) < at(j, j);
  });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = at(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) {
      out.eigenvectors[r * n + k] = v[r * n + order[k]];
    }
  }
  return out;
}

double default_psd_tolerance(const SymMatrix& a) {
  return 1e-9 * (1.0 + a.max_abs());
}

PsdVerdict psd_check(const SymMatrix& a, double tol) {
  if (!(tol >= 0.0)) {
    throw Error(Errc::invalid_argument, "PSD tolerance must be >= 0");
  }
  PsdVerdict verdict;
  verdict.tolerance_used = tol;
  if (a.order() == 0) {
    verdict.is_psd = true;
    return verdict;
  }
  verdict.min_eigenvalue = sym_eig(a).eigenvalues.front();
  verdict.is_psd = verdict.min_eigenvalue >= -tol;
  return verdict;
}

PsdVerdict psd_check(const SymMatrix& a) {
  return psd_check(a, default_psd_tolerance(a));
}

PencilExtremes pencil_extremes(const SymMatrix& a, const SymMatrix& b,
                               double rank_tol) {
  if (a.order() != b.order()) {
    throw Error(Errc::dimension_mismatch, "pencil matrices differ in order");
  }
  if (a.order() == 0) {
    throw Error(Errc::rank_deficient, "empty pencil");
  }
  const EigenDecomposition eb = sym_eig(b);
  const std::size_t n = b.order();
  const double top = eb.eigenvalues.back();
  if (!(top > 0.0)) {
    throw Error(Errc::rank_deficient,
                "pencil has zero effective rank (functional vanishes on the "
                "truncation)");
  }
  if (eb.eigenvalues.front() < -rank_tol * top) {
    throw Error(Errc::not_psd, "pencil denominator is not PSD: min eigenvalue " +
                                   std::to_string(eb.eigenvalues.front()));
  }

  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < n; ++k) {
    if (eb.eigenvalues[k] > rank_tol * top) kept.push_back(k);
  }
  const std::size_t r = kept.size();

  // W = V_r diag(lambda_r^{-1/2}); reduced = W^T A W.
  std::vector<double> w(n * r);
  for (std::size_t c = 0; c < r; ++c) {
    const double scale = 1.0 / std::sqrt(eb.eigenvalues[kept[c]]);
    for (std::size_t i = 0; i < n; ++i) {
      w[i * r + c] = eb.vector(i, kept[c]) * scale;
    }
  }
  std::vector<double> aw(n * r, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t c = 0; c < r; ++c) aw[i * r + c] += aik * w[k * r + c];
    }
  }
  SymMatrix reduced(r);
  for (std::size_t p = 0; p < r; ++p) {
    for (std::size_t q = p; q < r; ++q) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += w[i * r + p] * aw[i * r + q];
      reduced.set(p, q, s);
    }
  }
  const EigenDecomposition er = sym_eig(reduced);
  return {er.eigenvalues.front(), er.eigenvalues.back(), r};
}

}  // namespace momentkit

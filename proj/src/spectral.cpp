#include "momentkit/spectral.hpp"

#include <cmath>
#include <string>

namespace momentkit {

MomentSequence OperatorMomentData::as_sequence() const {
  return MomentSequence(1, static_cast<unsigned>(moments.size() - 1), moments);
}

OperatorMomentData operator_moments(const SymMatrix& op,
                                    std::span<const double> h,
                                    unsigned max_degree) {
  const std::size_t n = op.order();
  if (h.size() != n) {
    throw Error(Errc::dimension_mismatch, "vector length " + std::to_string(h.size()) +
                                              " does not match operator order " +
                                              std::to_string(n));
  }
  if (max_degree % 2 != 0) {
    throw Error(Errc::invalid_argument, "max_degree must be even");
  }
  double norm = 0.0;
  for (double x : h) norm += x * x;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(Errc::invalid_argument, "vector h must be nonzero and finite");
  }
  OperatorMomentData out{op, std::vector<double>(h.begin(), h.end()), {}};
  for (double& x : out.h) x /= norm;

  // m_{2j} = <T^j h, T^j h>, m_{2j+1} = <T^{j+1} h, T^j h>.
  std::vector<double> cur = out.h;
  std::vector<double> next(n);
  out.moments.assign(max_degree + 1, 0.0);
  auto dot = [n](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
  };
  for (unsigned j = 0; 2 * j <= max_degree; ++j) {
    out.moments[2 * j] = dot(cur, cur);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += op(i, k) * cur[k];
      next[i] = s;
    }
    if (2 * j + 1 <= max_degree) out.moments[2 * j + 1] = dot(next, cur);
    cur.swap(next);
  }
  return out;
}

RayleighInterval rayleigh_interval(const SymMatrix& op) {
  if (op.order() == 0) throw Error(Errc::invalid_argument, "empty operator");
  const EigenDecomposition e = sym_eig(op);
  return {e.eigenvalues.front(), e.eigenvalues.back()};
}

DiscreteMeasure quadrature_from_moments(std::span<const double> moments,
                                        unsigned k) {
  if (k == 0) throw Error(Errc::invalid_argument, "node count must be >= 1");
  if (moments.size() < 2 * static_cast<std::size_t>(k)) {
    throw RankDeficiency(static_cast<unsigned>(moments.size() / 2),
                         "k = " + std::to_string(k) + " nodes need moments m_0..m_" +
                             std::to_string(2 * k - 1) + ", only " +
                             std::to_string(moments.size()) + " stored");
  }
  if (!(moments[0] > 0.0)) {
    throw RankDeficiency(0, "m_0 must be positive");
  }
  // Upper Cholesky factor R of the Hankel matrix H_ij = m_{i+j}: rows
  // 0..k-1, columns 0..k. The last diagonal entry is never needed.
  using Real = long double;
  std::vector<std::vector<Real>> r(k, std::vector<Real>(k + 1, 0.0L));
  for (unsigned i = 0; i < k; ++i) {
    Real diag = moments[2 * i];
    for (unsigned p = 0; p < i; ++p) diag -= r[p][i] * r[p][i];
    if (!(diag > 1e-13L * static_cast<Real>(std::fabs(moments[2 * i])))) {
      throw RankDeficiency(i, "Hankel form has numerical rank " + std::to_string(i) +
                                  " < requested node count " + std::to_string(k));
    }
    r[i][i] = std::sqrt(diag);
    for (unsigned j = i + 1; j <= k; ++j) {
      Real s = moments[i + j];
      for (unsigned p = 0; p < i; ++p) s -= r[p][i] * r[p][j];
      r[i][j] = s / r[i][i];
    }
  }
  // Jacobi matrix: alpha_j on the diagonal, beta_j between j and j+1.
  SymMatrix jacobi(k);
  for (unsigned j = 0; j < k; ++j) {
    Real alpha = r[j][j + 1] / r[j][j];
    if (j > 0) alpha -= r[j - 1][j] / r[j - 1][j - 1];
    jacobi.set(j, j, static_cast<double>(alpha));
    if (j + 1 < k) jacobi.set(j, j + 1, static_cast<double>(r[j + 1][j + 1] / r[j][j]));
  }
  const EigenDecomposition e = sym_eig(jacobi);
  DiscreteMeasure out;
  for (unsigned i = 0; i < k; ++i) {
    const double v0 = e.vector(0, i);
    const double w = moments[0] * v0 * v0;
    if (w < kWeightPruneThreshold * moments[0]) continue;
    out.nodes.push_back(e.eigenvalues[i]);
    out.weights.push_back(w);
  }
  return out;
}

DiscreteMeasure quadrature_from_moments(const OperatorMomentData& data,
                                        unsigned k) {
  return quadrature_from_moments(data.moments, k);
}

}  // namespace momentkit

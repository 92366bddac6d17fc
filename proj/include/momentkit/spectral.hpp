#pragma once

#include <span>
#include <vector>

#include "momentkit/linalg.hpp"
#include "momentkit/moments.hpp"

namespace momentkit {

// Moments m_k = <T^k h, h> of a symmetric operator T against unit h.
struct OperatorMomentData {
  SymMatrix op;
  std::vector<double> h;        // unit-normalized
  std::vector<double> moments;  // m_0 .. m_{max_degree}

  // The same data as a one-dimensional functional on R[t].
  MomentSequence as_sequence() const;
};

OperatorMomentData operator_moments(const SymMatrix& op,
                                    std::span<const double> h,
                                    unsigned max_degree);

struct RayleighInterval {
  double alpha = 0.0;
  double beta = 0.0;
};

RayleighInterval rayleigh_interval(const SymMatrix& op);

struct DiscreteMeasure {
  std::vector<double> nodes;  // ascending
  std::vector<double> weights;
};

inline constexpr double kWeightPruneThreshold = 1e-12;

// k-node Gauss rule matching m_0..m_{2k-1}. The Jacobi matrix comes from a
// Cholesky factorization of the Hankel form; nodes are its eigenvalues and
// weights m_0 times squared first eigenvector components. Throws
// RankDeficiency (carrying the largest feasible k) when the Hankel form
// degenerates before k.
DiscreteMeasure quadrature_from_moments(std::span<const double> moments,
                                        unsigned k);
DiscreteMeasure quadrature_from_moments(const OperatorMomentData& data,
                                        unsigned k);

}  // namespace momentkit

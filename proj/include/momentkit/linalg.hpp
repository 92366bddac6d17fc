#pragma once

#include <cstddef>
#include <vector>

#include "momentkit/error.hpp"

namespace momentkit {

// Dense real symmetric matrix. Every write keeps (i,j) and (j,i) equal.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order)
      : n_(order), data_(order * order, 0.0) {}

  // Rows of a square matrix; asymmetric input is symmetrized as (A + A^T)/2.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SymMatrix identity(std::size_t order);

  std::size_t order() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  double max_abs() const;
  double frobenius_norm() const;

  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix operator-(const SymMatrix& other) const;
  friend SymMatrix operator*(double s, const SymMatrix& m);

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;   // ascending
  std::vector<double> eigenvectors;  // column k holds the k-th eigenvector

  std::size_t order() const { return eigenvalues.size(); }
  double vector(std::size_t row, std::size_t k) const {
    return eigenvectors[row * order() + k];
  }
};

// Cyclic Jacobi rotations. Throws Errc::non_finite on NaN/Inf input.
EigenDecomposition sym_eig(const SymMatrix& a);

struct PsdVerdict {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  double tolerance_used = 0.0;
};

// 1e-9 * (1 + max |entry|).
double default_psd_tolerance(const SymMatrix& a);

PsdVerdict psd_check(const SymMatrix& a, double tol);
PsdVerdict psd_check(const SymMatrix& a);

struct PencilExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::size_t effective_rank = 0;
};

inline constexpr double kDefaultRankTol = 1e-10;

// Extreme values of x^T A x / x^T B x over x outside the kernel of B.
// B is restricted to eigenpairs above rank_tol * lambda_max(B) and whitened;
// no regularizing shift is ever added.
PencilExtremes pencil_extremes(const SymMatrix& a, const SymMatrix& b,
                               double rank_tol = kDefaultRankTol);

}  // namespace momentkit

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "momentkit/error.hpp"

namespace momentkit {

// Exponent vector of a monomial x_1^e_1 ... x_d^e_d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> exponents)
      : exps_(std::move(exponents)) {}

  static MultiIndex zero(std::size_t dim) {
    return MultiIndex(std::vector<unsigned>(dim, 0));
  }
  static MultiIndex unit(std::size_t dim, std::size_t var);

  std::size_t dimension() const { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  std::span<const unsigned> exponents() const { return exps_; }
  unsigned degree() const;

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex scaled(unsigned k) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> exps_;
};

// Graded lexicographic order: lower total degree first, then the index with
// the larger leading exponent first, so (0,0) < (1,0) < (0,1) < (2,0) < ...
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// All multi-indices of total degree <= max_degree, in graded-lex order.
// The count is binomial(max_degree + dim, dim).
std::vector<MultiIndex> enumerate_monomials(std::size_t dim,
                                            unsigned max_degree);

// Position of `index` in enumerate_monomials(index.dimension(), anything >=
// its degree).
std::size_t graded_lex_rank(const MultiIndex& index);

std::size_t binomial(std::size_t n, std::size_t k);

// Sparse polynomial over named-free variables x_1..x_d. Immutable in spirit:
// every arithmetic operation returns a new value. No zero coefficient is ever
// stored.
template <class Coeff>
class BasicPolynomial {
 public:
  using TermMap = std::map<MultiIndex, Coeff, GradedLex>;

  explicit BasicPolynomial(std::size_t dim) : dim_(dim) {
    if (dim == 0) {
      throw Error(Errc::invalid_argument, "polynomial dimension must be >= 1");
    }
  }

  static BasicPolynomial constant(std::size_t dim, const Coeff& c) {
    BasicPolynomial p(dim);
    p.add_term(MultiIndex::zero(dim), c);
    return p;
  }
  static BasicPolynomial variable(std::size_t dim, std::size_t var) {
    BasicPolynomial p(dim);
    p.add_term(MultiIndex::unit(dim, var), Coeff(1));
    return p;
  }
  static BasicPolynomial monomial(const MultiIndex& index, const Coeff& c) {
    BasicPolynomial p(index.dimension());
    p.add_term(index, c);
    return p;
  }

  std::size_t dimension() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // -1 for the zero polynomial.
  int degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
  }

  Coeff coefficient(const MultiIndex& index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const MultiIndex& index, const Coeff& c) {
    if (index.dimension() != dim_) {
      throw Error(Errc::dimension_mismatch,
                  "monomial length does not match polynomial dimension");
    }
    if (c == Coeff(0)) return;
    auto [it, inserted] = terms_.try_emplace(index, c);
    if (!inserted) {
      Coeff sum = it->second + c;
      if (sum == Coeff(0)) {
        terms_.erase(it);
      } else {
        it->second = sum;
      }
    }
  }

  BasicPolynomial operator-() const {
    BasicPolynomial r(dim_);
    for (const auto& [idx, c] : terms_) r.terms_.emplace(idx, Coeff(-c));
    return r;
  }

  friend BasicPolynomial operator+(const BasicPolynomial& p,
                                   const BasicPolynomial& q) {
    p.require_same_dimension(q);
    BasicPolynomial r = p;
    for (const auto& [idx, c] : q.terms_) r.add_term(idx, c);
    return r;
  }

  friend BasicPolynomial operator-(const BasicPolynomial& p,
                                   const BasicPolynomial& q) {
    p.require_same_dimension(q);
    BasicPolynomial r = p;
    for (const auto& [idx, c] : q.terms_) r.add_term(idx, Coeff(-c));
    return r;
  }

  friend BasicPolynomial operator*(const BasicPolynomial& p,
                                   const BasicPolynomial& q) {
    p.require_same_dimension(q);
    BasicPolynomial r(p.dim_);
    for (const auto& [i, a] : p.terms_) {
      for (const auto& [j, b] : q.terms_) {
        r.add_term(i + j, Coeff(a * b));
      }
    }
    return r;
  }

  friend BasicPolynomial operator*(const Coeff& s, const BasicPolynomial& p) {
    BasicPolynomial r(p.dim_);
    if (s == Coeff(0)) return r;
    for (const auto& [idx, c] : p.terms_) r.terms_.emplace(idx, Coeff(s * c));
    return r;
  }

  friend bool operator==(const BasicPolynomial& p, const BasicPolynomial& q) {
    return p.dim_ == q.dim_ && p.terms_ == q.terms_;
  }

 private:
  void require_same_dimension(const BasicPolynomial& other) const {
    if (dim_ != other.dim_) {
      throw Error(Errc::dimension_mismatch,
                  "polynomial dimensions differ: " + std::to_string(dim_) +
                      " vs " + std::to_string(other.dim_));
    }
  }

  std::size_t dim_;
  TermMap terms_;
};

// p^k by repeated squaring; p^0 = 1.
template <class Coeff>
BasicPolynomial<Coeff> pow(const BasicPolynomial<Coeff>& p, unsigned k) {
  BasicPolynomial<Coeff> result =
      BasicPolynomial<Coeff>::constant(p.dimension(), Coeff(1));
  BasicPolynomial<Coeff> base = p;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

template <class Coeff>
Coeff eval(const BasicPolynomial<Coeff>& p, std::span<const Coeff> point) {
  if (point.size() != p.dimension()) {
    throw Error(Errc::dimension_mismatch,
                "evaluation point has length " + std::to_string(point.size()) +
                    ", polynomial dimension is " +
                    std::to_string(p.dimension()));
  }
  Coeff sum(0);
  for (const auto& [idx, c] : p.terms()) {
    Coeff term = c;
    for (std::size_t v = 0; v < idx.dimension(); ++v) {
      for (unsigned e = 0; e < idx[v]; ++e) term = term * point[v];
    }
    sum = sum + term;
  }
  return sum;
}

using Polynomial = BasicPolynomial<double>;

// x, y, z style names for d <= 3 (t for d = 1), x1..xd beyond.
std::vector<std::string> default_variable_names(std::size_t dim);

// Parses sums of products such as "3*x^2*y - 0.5" or "(1-t)*(1+t)^2".
// Exponents must be nonnegative integer literals.
Polynomial parse_polynomial(std::string_view text,
                            std::span<const std::string> variables);

std::string to_string(const Polynomial& p,
                      std::span<const std::string> variables);
std::string to_string(const Polynomial& p);

}  // namespace momentkit

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "momentkit/poly.hpp"
#include "momentkit/rational.hpp"

using namespace momentkit;

namespace {

const std::vector<std::string> kT{"t"};
const std::vector<std::string> kXY{"x", "y"};

Polynomial P(std::string_view text, const std::vector<std::string>& vars = kT) {
  return parse_polynomial(text, vars);
}

RationalPolynomial random_rational(std::mt19937& rng, std::size_t dim) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<unsigned> expo(0, 2);
  RationalPolynomial p(dim);
  for (int k = 0; k < 4; ++k) {
    std::vector<unsigned> e(dim);
    for (auto& x : e) x = expo(rng);
    mpq_class c(coeff(rng), den(rng));
    c.canonicalize();
    p.add_term(MultiIndex(e), c);
  }
  return p;
}

}  // namespace

TEST(Monomials, UnivariateBasis) {
  const auto m = enumerate_monomials(1, 2);
  ASSERT_EQ(m.size(), 3u);
  for (unsigned i = 0; i < 3; ++i) EXPECT_EQ(m[i], MultiIndex({i}));
}

TEST(Monomials, GradedLexOrderInTwoVariables) {
  const auto m = enumerate_monomials(2, 1);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], MultiIndex({0, 0}));
  EXPECT_EQ(m[1], MultiIndex({1, 0}));
  EXPECT_EQ(m[2], MultiIndex({0, 1}));
}

TEST(Monomials, CountMatchesBinomial) {
  EXPECT_EQ(enumerate_monomials(3, 4).size(), 35u);
  for (std::size_t d = 1; d <= 4; ++d) {
    for (unsigned n = 0; n <= 6; ++n) {
      EXPECT_EQ(enumerate_monomials(d, n).size(), binomial(n + d, d));
    }
  }
}

TEST(Monomials, StrictlyIncreasingCompleteAndRanked) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const unsigned n = 5;
    const auto m = enumerate_monomials(d, n);
    GradedLex less;
    std::set<std::vector<unsigned>> seen;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i > 0) {
        EXPECT_TRUE(less(m[i - 1], m[i]));
        EXPECT_FALSE(less(m[i], m[i - 1]));
      }
      EXPECT_LE(m[i].degree(), n);
      EXPECT_EQ(graded_lex_rank(m[i]), i);
      seen.insert({m[i].exponents().begin(), m[i].exponents().end()});
    }
    EXPECT_EQ(seen.size(), m.size());
  }
}

TEST(PolyMul, DifferenceOfSquares) {
  EXPECT_EQ(P("1 + t") * P("1 - t"), P("1 - t^2"));
}

TEST(PolyMul, ZeroAnnihilates) {
  const Polynomial zero(1);
  const auto r = P("3 + t^4") * zero;
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(r.degree(), -1);
}

TEST(PolyMul, ChainIntervalsIdentityInTwoSymbols) {
  const std::vector<std::string> vars{"M", "a"};
  const auto lhs = P("(M - a)*(M + a)^2 + (M + a)*(M - a)^2", vars);
  EXPECT_EQ(lhs, P("2*M^3 - 2*M*a^2", vars));
}

TEST(PolyMul, DegreesAdd) {
  const auto p = P("x^2*y + 1", kXY);
  const auto q = P("y^3 - x", kXY);
  EXPECT_EQ((p * q).degree(), p.degree() + q.degree());
}

TEST(PolyMul, DimensionMismatchThrows) {
  try {
    (void)(P("t") * P("x", kXY));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::dimension_mismatch);
  }
}

TEST(PolyPow, ExponentLaw) { EXPECT_EQ(pow(P("t^2"), 3), P("t^6")); }

TEST(PolyPow, Binomial) { EXPECT_EQ(pow(P("1 + t"), 2), P("1 + 2*t + t^2")); }

TEST(PolyPow, TwoVariableCube) {
  EXPECT_EQ(pow(P("x + y", kXY), 3), P("x^3 + 3*x^2*y + 3*x*y^2 + y^3", kXY));
}

TEST(PolyPow, ZerothPowerIsOne) {
  EXPECT_EQ(pow(P("x - y", kXY), 0), Polynomial::constant(2, 1.0));
}

TEST(PolyEval, RootOfOneMinusTSquared) {
  const double x = 1.0;
  EXPECT_DOUBLE_EQ(eval(P("1 - t^2"), std::span<const double>(&x, 1)), 0.0);
}

TEST(PolyEval, SumOfSquares) {
  const std::vector<double> pt{3.0, 4.0};
  EXPECT_DOUBLE_EQ(eval(P("x^2 + y^2", kXY), std::span<const double>(pt)), 25.0);
}

TEST(PolyEval, ShiftedLegendreRoot) {
  const double x = (3.0 + std::sqrt(3.0)) / 6.0;
  EXPECT_NEAR(eval(P("6*t^2 - 6*t + 1"), std::span<const double>(&x, 1)), 0.0, 1e-14);
}

TEST(PolyEval, LengthMismatchThrows) {
  const std::vector<double> pt{1.0};
  EXPECT_THROW((void)eval(P("x + y", kXY), std::span<const double>(pt)), Error);
}

TEST(RingAxioms, ExactOverRationals) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const auto p = random_rational(rng, dim);
    const auto q = random_rational(rng, dim);
    const auto r = random_rational(rng, dim);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ(p + q, q + p);
  }
}

TEST(RingAxioms, EvaluationIsHomomorphismOverRationals) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-7, 7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const auto p = random_rational(rng, dim);
    const auto q = random_rational(rng, dim);
    std::vector<mpq_class> pt;
    for (std::size_t i = 0; i < dim; ++i) {
      pt.emplace_back(num(rng), 3);
      pt.back().canonicalize();
    }
    const std::span<const mpq_class> s(pt);
    EXPECT_EQ(eval(p * q, s), eval(p, s) * eval(q, s));
  }
}

TEST(RingAxioms, EvaluationIsHomomorphismOverDoubles) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<unsigned> expo(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    Polynomial p(dim), q(dim);
    for (int k = 0; k < 4; ++k) {
      std::vector<unsigned> e1(dim), e2(dim);
      for (auto& x : e1) x = expo(rng);
      for (auto& x : e2) x = expo(rng);
      p.add_term(MultiIndex(e1), u(rng));
      q.add_term(MultiIndex(e2), u(rng));
    }
    std::vector<double> pt(dim);
    for (auto& x : pt) x = u(rng);
    const std::span<const double> s(pt);
    const double lhs = eval(p * q, s);
    const double rhs = eval(p, s) * eval(q, s);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::fabs(rhs)));
  }
}

TEST(Parser, AcceptsCanonicalSyntax) {
  const auto p = P("3*x^2*y - 0.5", kXY);
  EXPECT_EQ(p.coefficient(MultiIndex({2, 1})), 3.0);
  EXPECT_EQ(p.coefficient(MultiIndex({0, 0})), -0.5);
  EXPECT_EQ(p.terms().size(), 2u);
}

TEST(Parser, UnknownVariableIsParseError) {
  try {
    (void)P("q + 1");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse_error);
  }
}

TEST(Parser, RejectsTrailingGarbage) {
  EXPECT_THROW((void)P("t +"), Error);
  EXPECT_THROW((void)P("t )"), Error);
  EXPECT_THROW((void)P("t^-1"), Error);
}

TEST(Parser, RoundTripsThroughText) {
  for (const char* text : {"1 - t^2", "3*t^5 + 0.25*t - 7", "-t"}) {
    const auto p = P(text);
    EXPECT_EQ(parse_polynomial(to_string(p, kT), kT), p);
  }
  const auto q = P("x*y - 2*y^3 + 4", kXY);
  EXPECT_EQ(parse_polynomial(to_string(q, kXY), kXY), q);
}

TEST(Parser, DefaultNames) {
  EXPECT_EQ(default_variable_names(1), kT);
  EXPECT_EQ(default_variable_names(2), kXY);
  EXPECT_EQ(default_variable_names(4),
            (std::vector<std::string>{"x1", "x2", "x3", "x4"}));
}

TEST(Polynomial, ZeroDegreeSentinel) {
  EXPECT_EQ(Polynomial(2).degree(), -1);
  EXPECT_EQ(Polynomial::constant(2, 0.0).degree(), -1);
  EXPECT_EQ(Polynomial::constant(2, 4.0).degree(), 0);
}

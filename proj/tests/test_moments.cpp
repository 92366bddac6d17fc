#include <gtest/gtest.h>

#include <cmath>

#include "momentkit/moments.hpp"
#include "support/corpus.hpp"

using namespace momentkit;
using namespace momentkit::testing;

namespace {

const std::vector<std::string> kT{"t"};

Polynomial P(std::string_view text) { return parse_polynomial(text, kT); }

double monomial_integral(const std::vector<std::pair<double, double>>& box,
                         const MultiIndex& alpha) {
  double v = 1.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto [lo, hi] = box[i];
    const unsigned k = alpha[i];
    v *= (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / ((k + 1) * (hi - lo));
  }
  return v;
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (unsigned n = 1; n <= 12; ++n) {
    const auto rule = gauss_legendre(n, 0.0, 1.0);
    ASSERT_EQ(rule.nodes.size(), n);
    for (unsigned k = 0; k < 2 * n; ++k) {
      double s = 0.0;
      for (unsigned i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
      EXPECT_NEAR(s, 1.0 / (k + 1), 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GaussLegendre, NodesMatchIndependentRoots) {
  for (unsigned n : {2u, 5u, 9u}) {
    const auto rule = gauss_legendre(n, 0.0, 1.0);
    const auto roots = shifted_legendre_roots(n);
    ASSERT_EQ(roots.size(), n);
    for (unsigned i = 0; i < n; ++i) EXPECT_NEAR(rule.nodes[i], roots[i], 1e-13);
  }
}

TEST(FromMeasure, SymmetricAtoms) {
  const auto L = two_atoms(4);
  for (unsigned k = 0; k <= 4; ++k) {
    EXPECT_DOUBLE_EQ(L.value(MultiIndex({k})), k % 2 == 0 ? 1.0 : 0.0);
  }
}

TEST(FromMeasure, UnitIntervalBox) {
  const auto L = from_measure(box_spec({{0.0, 1.0}}, 3), 4);
  for (unsigned k = 0; k <= 4; ++k) EXPECT_NEAR(L.value(MultiIndex({k})), 1.0 / (k + 1), 1e-15);
}

TEST(FromMeasure, DiracAtOrigin) {
  const auto L = dirac({0.0, 0.0}, 6);
  for (const auto& alpha : enumerate_monomials(2, 6)) {
    EXPECT_EQ(L.value(alpha), alpha.degree() == 0 ? 1.0 : 0.0);
  }
}

TEST(FromMeasure, BoxOrderTooSmall) {
  try {
    (void)from_measure(box_spec({{0.0, 1.0}}, 2), 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_argument);
    EXPECT_NE(std::string(e.what()).find("order >= 4"), std::string::npos);
  }
}

TEST(FromMeasure, RejectsBadSpecs) {
  EXPECT_THROW((void)from_measure(atoms_spec({{{1.0}, -1.0}}), 2), Error);
  EXPECT_THROW((void)from_measure(box_spec({{1.0, 0.0}}, 3), 2), Error);
  EXPECT_THROW((void)from_measure(atoms_spec({{{1.0}, 1.0}, {{1.0, 2.0}, 1.0}}), 2), Error);
  EXPECT_THROW((void)from_measure(atoms_spec({{{1.0}, 1.0}}), 3), Error);
}

TEST(FromMeasure, AtomicOracleSoundness) {
  const auto corpus = random_corpus(25, 101);
  std::mt19937 rng(5);
  std::uniform_int_distribution<unsigned> expo(0, 2);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (const auto& m : corpus) {
    const auto L = moments_of(m, 6);
    Polynomial p(m.dim);
    for (int k = 0; k < 5; ++k) {
      std::vector<unsigned> e(m.dim);
      for (auto& x : e) x = expo(rng);
      p.add_term(MultiIndex(e), coeff(rng));
    }
    double direct = 0.0;
    for (const auto& a : m.atoms) direct += a.weight * eval(p, std::span<const double>(a.point));
    EXPECT_NEAR(apply(L, p), direct, 1e-12 * (1.0 + std::fabs(direct)) * 10);
  }
}

TEST(FromMeasure, BoxOracleSoundness) {
  const std::vector<std::pair<double, double>> box{{-1.0, 2.0}, {0.5, 1.5}};
  const auto L = from_measure(box_spec(box, 5), 8);
  EXPECT_TRUE(L.was_rescaled());
  for (const auto& alpha : enumerate_monomials(2, 8)) {
    EXPECT_NEAR(L.value(alpha), monomial_integral(box, alpha), 1e-12);
  }
}

TEST(Apply, ShiftedLegendreVanishes) {
  EXPECT_NEAR(apply(lebesgue01(4), P("6*t^2 - 6*t + 1")), 0.0, 1e-15);
}

TEST(Apply, OneIsOne) {
  EXPECT_DOUBLE_EQ(apply(two_atoms(2), P("1")), 1.0);
  EXPECT_DOUBLE_EQ(apply(lebesgue01(6), P("1")), 1.0);
}

TEST(Apply, RootsAtBothAtoms) { EXPECT_DOUBLE_EQ(apply(two_atoms(4), P("1 - t^2")), 0.0); }

TEST(Apply, DegreeOverflow) {
  try {
    (void)apply(two_atoms(4), P("t^5"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degree_overflow);
  }
}

TEST(MomentMatrix, LebesguePlain) {
  const auto M = moment_matrix(lebesgue01(4), 1).matrix;
  EXPECT_NEAR(M(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(M(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(M(1, 1), 1.0 / 3.0, 1e-15);
}

TEST(MomentMatrix, LebesgueShiftedByT) {
  const auto M = moment_matrix(lebesgue01(4), 1, P("t")).matrix;
  EXPECT_NEAR(M(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(M(0, 1), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(M(1, 1), 0.25, 1e-15);
}

TEST(MomentMatrix, TwoAtomsShiftedByT) {
  const auto M = moment_matrix(two_atoms(4), 1, P("t")).matrix;
  EXPECT_EQ(M(0, 0), 0.0);
  EXPECT_EQ(M(0, 1), 1.0);
  EXPECT_EQ(M(1, 1), 0.0);
}

TEST(MomentMatrix, HankelStructure) {
  const auto corpus = random_corpus(10, 202);
  for (const auto& m : corpus) {
    const auto L = moments_of(m, 6);
    const auto shift = Polynomial::constant(m.dim, 1.0) + Polynomial::variable(m.dim, 0);
    const auto mm = moment_matrix(L, 2, shift);
    const auto& basis = mm.basis;
    EXPECT_EQ(basis.size(), binomial(2 + m.dim, m.dim));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
          for (std::size_t l = 0; l < basis.size(); ++l) {
            if (basis[i] + basis[j] == basis[k] + basis[l]) {
              EXPECT_EQ(mm.matrix(i, j), mm.matrix(k, l));
            }
          }
        }
      }
    }
  }
}

TEST(MomentMatrix, DegreeOverflow) {
  EXPECT_THROW((void)moment_matrix(two_atoms(4), 2, P("t")), Error);
  EXPECT_EQ(max_localized_order(two_atoms(4), P("t")), 1);
  EXPECT_EQ(max_localized_order(two_atoms(2), P("t^3")), -1);
}

TEST(PsdFunctional, MeasuresArePsdAtEveryOrder) {
  const auto corpus = random_corpus(20, 303);
  for (const auto& m : corpus) {
    const auto L = moments_of(m, 8);
    for (unsigned n = 0; n <= 4; ++n) EXPECT_TRUE(psd_functional_check(L, n).is_psd);
  }
}

TEST(PsdFunctional, NegativeDiagonal) {
  const MomentSequence L(1, 2, {1.0, 0.0, -1.0});
  const auto v = psd_functional_check(L, 1);
  EXPECT_FALSE(v.is_psd);
  EXPECT_NEAR(v.min_eigenvalue, -1.0, 1e-15);
}

TEST(PsdFunctional, HilbertSpectrum) {
  const auto v = psd_functional_check(lebesgue01(4), 2);
  EXPECT_TRUE(v.is_psd);
  EXPECT_NEAR(v.min_eigenvalue, 2.6873e-3, 1e-6);
}

TEST(PsdFunctional, RieszPositivityOnNonnegativeShifts) {
  const auto corpus = random_corpus(15, 404);
  for (const auto& m : corpus) {
    const auto L = moments_of(m, 8);
    Polynomial shift = Polynomial::constant(m.dim, 1.0);
    for (std::size_t i = 0; i < m.dim; ++i) shift = shift + pow(Polynomial::variable(m.dim, i), 2);
    EXPECT_TRUE(psd_check(moment_matrix(L, 2, shift).matrix).is_psd);
  }
}

TEST(Normalization, RescalesPositiveMass) {
  const MomentSequence L(1, 2, {2.0, 1.0, 4.0});
  EXPECT_TRUE(L.normalized());
  EXPECT_TRUE(L.was_rescaled());
  EXPECT_DOUBLE_EQ(L.original_mass(), 2.0);
  EXPECT_DOUBLE_EQ(L.value(MultiIndex({2})), 2.0);
}

TEST(Normalization, NonpositiveMassIsKeptButFlagged) {
  const MomentSequence L(1, 2, {-1.0, 0.0, 1.0});
  EXPECT_FALSE(L.normalized());
  try {
    L.require_normalized("c_bound");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_normalized);
  }
}

TEST(Normalization, RejectsOddDegreeAndWrongCount) {
  EXPECT_THROW(MomentSequence(1, 3, {1, 0, 1, 0}), Error);
  EXPECT_THROW(MomentSequence(1, 2, {1, 0}), Error);
}

TEST(Truncation, KeepsLowerMoments) {
  const auto L = lebesgue01(8);
  const auto T = L.truncated(4);
  EXPECT_EQ(T.max_degree(), 4u);
  for (const auto& alpha : enumerate_monomials(1, 4)) EXPECT_EQ(T.value(alpha), L.value(alpha));
}

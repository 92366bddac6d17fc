#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "momentkit/momentkit.h"

namespace {

struct PolyDeleter {
  void operator()(mk_poly* p) const { mk_poly_free(p); }
};
struct MomentsDeleter {
  void operator()(mk_moments* p) const { mk_moments_free(p); }
};
struct ReportDeleter {
  void operator()(mk_report* p) const { mk_report_free(p); }
};
struct OperatorDeleter {
  void operator()(mk_operator* p) const { mk_operator_free(p); }
};
struct CMomentsDeleter {
  void operator()(mk_cmoments* p) const { mk_cmoments_free(p); }
};
struct StringDeleter {
  void operator()(char* s) const { mk_string_free(s); }
};

using Poly = std::unique_ptr<mk_poly, PolyDeleter>;
using Moments = std::unique_ptr<mk_moments, MomentsDeleter>;
using Report = std::unique_ptr<mk_report, ReportDeleter>;
using Operator = std::unique_ptr<mk_operator, OperatorDeleter>;
using CMoments = std::unique_ptr<mk_cmoments, CMomentsDeleter>;
using String = std::unique_ptr<char, StringDeleter>;

Poly poly(const char* text, size_t dim = 1) {
  mk_poly* p = nullptr;
  EXPECT_EQ(mk_poly_parse_default(text, dim, &p), MK_OK) << mk_last_error();
  return Poly(p);
}

Moments measure(const char* doc, unsigned degree) {
  mk_moments* L = nullptr;
  EXPECT_EQ(mk_moments_from_measure_json(doc, degree, &L), MK_OK) << mk_last_error();
  return Moments(L);
}

const char* kLebesgue = R"({"box": {"bounds": [[0, 1]], "order": 7}})";
const char* kCircle = R"({"atoms": [{"point": [2, 0], "weight": 0.25},
  {"point": [-2, 0], "weight": 0.25}, {"point": [0, 2], "weight": 0.25},
  {"point": [0, -2], "weight": 0.25}]})";

}  // namespace

TEST(CApi, StatusNamesAndVersion) {
  EXPECT_STREQ(mk_status_name(MK_OK), "ok");
  EXPECT_NE(std::string(mk_status_name(MK_ERR_NOT_PSD)), "");
  EXPECT_NE(std::string(mk_version()), "");
}

TEST(CApi, NullArguments) {
  mk_poly* p = nullptr;
  EXPECT_EQ(mk_poly_parse_default(nullptr, 1, &p), MK_ERR_NULL_ARGUMENT);
  EXPECT_EQ(mk_poly_parse_default("t", 1, nullptr), MK_ERR_NULL_ARGUMENT);
  double v = 0.0;
  EXPECT_EQ(mk_moments_apply(nullptr, nullptr, &v), MK_ERR_NULL_ARGUMENT);
  EXPECT_NE(std::string(mk_last_error()), "");
  mk_poly_free(nullptr);
  mk_moments_free(nullptr);
  mk_report_free(nullptr);
}

TEST(CApi, PolynomialRoundTrip) {
  const char* vars[] = {"M", "a"};
  mk_poly* raw = nullptr;
  ASSERT_EQ(mk_poly_parse("(M - a)*(M + a)", vars, 2, &raw), MK_OK);
  Poly p(raw);
  EXPECT_EQ(mk_poly_dimension(p.get()), 2u);
  EXPECT_EQ(mk_poly_degree(p.get()), 2);
  const double pt[] = {3.0, 1.0};
  double v = 0.0;
  ASSERT_EQ(mk_poly_eval(p.get(), pt, 2, &v), MK_OK);
  EXPECT_DOUBLE_EQ(v, 8.0);
  EXPECT_EQ(mk_poly_eval(p.get(), pt, 1, &v), MK_ERR_DIMENSION_MISMATCH);
  char* s = nullptr;
  ASSERT_EQ(mk_poly_to_string(p.get(), &s), MK_OK);
  String text(s);
  EXPECT_EQ(std::string(text.get()), "M^2 - a^2");
}

TEST(CApi, ParseErrorCode) {
  mk_poly* p = nullptr;
  EXPECT_EQ(mk_poly_parse_default("q + 1", 1, &p), MK_ERR_PARSE);
  EXPECT_EQ(p, nullptr);
}

TEST(CApi, MomentsFromMeasure) {
  const auto L = measure(kLebesgue, 12);
  EXPECT_EQ(mk_moments_dimension(L.get()), 1u);
  EXPECT_EQ(mk_moments_max_degree(L.get()), 12u);
  EXPECT_TRUE(mk_moments_normalized(L.get()));
  const auto p = poly("t^2");
  double v = 0.0;
  ASSERT_EQ(mk_moments_apply(L.get(), p.get(), &v), MK_OK);
  EXPECT_NEAR(v, 1.0 / 3.0, 1e-14);
  mk_psd_verdict verdict{};
  ASSERT_EQ(mk_psd_functional_check(L.get(), 6, &verdict), MK_OK);
  EXPECT_TRUE(verdict.is_psd);
}

TEST(CApi, BoxOrderTooSmall) {
  mk_moments* L = nullptr;
  EXPECT_NE(mk_moments_from_measure_json(R"({"box": {"bounds": [[0, 1]], "order": 2}})", 12, &L),
            MK_OK);
  EXPECT_EQ(L, nullptr);
}

TEST(CApi, MomentDocumentRoundTrip) {
  const auto L = measure(kCircle, 6);
  char* s = nullptr;
  ASSERT_EQ(mk_moments_to_json(L.get(), &s), MK_OK);
  String text(s);
  mk_moments* raw = nullptr;
  ASSERT_EQ(mk_moments_from_json(text.get(), &raw), MK_OK) << mk_last_error();
  Moments back(raw);
  const auto p = poly("x^2*y^2 + x^4", 2);
  double a = 0.0, b = 0.0;
  ASSERT_EQ(mk_moments_apply(L.get(), p.get(), &a), MK_OK);
  ASSERT_EQ(mk_moments_apply(back.get(), p.get(), &b), MK_OK);
  EXPECT_EQ(a, b);
  EXPECT_NEAR(a, 8.0, 1e-12);
}

TEST(CApi, RescaledOnIngest) {
  const double values[] = {2.0, 1.0, 1.0};
  mk_moments* raw = nullptr;
  ASSERT_EQ(mk_moments_from_values(1, 2, values, 3, &raw), MK_OK);
  Moments L(raw);
  EXPECT_TRUE(mk_moments_rescaled(L.get()));
  const auto one = poly("1");
  double v = 0.0;
  ASSERT_EQ(mk_moments_apply(L.get(), one.get(), &v), MK_OK);
  EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(CApi, NonPositiveMassIsFlagged) {
  const double values[] = {0.0, 1.0, 1.0};
  mk_moments* raw = nullptr;
  ASSERT_EQ(mk_moments_from_values(1, 2, values, 3, &raw), MK_OK);
  Moments L(raw);
  EXPECT_FALSE(mk_moments_normalized(L.get()));
  const auto t = poly("t");
  mk_c_bound_result c{};
  EXPECT_EQ(mk_c_bound(L.get(), t.get(), 0, &c, nullptr, 0), MK_ERR_NOT_NORMALIZED);
}

TEST(CApi, NonPsdDocument) {
  mk_moments* raw = nullptr;
  ASSERT_EQ(mk_moments_from_json(R"({"dimension": 1, "max_degree": 2, "moments": [
      {"index": [0], "value": 1}, {"index": [1], "value": 0},
      {"index": [2], "value": -1}]})",
                                 &raw),
            MK_OK);
  Moments L(raw);
  mk_psd_verdict verdict{};
  ASSERT_EQ(mk_psd_functional_check(L.get(), 1, &verdict), MK_OK);
  EXPECT_FALSE(verdict.is_psd);
  EXPECT_NEAR(verdict.min_eigenvalue, -1.0, 1e-12);
}

TEST(CApi, IntrinsicBounds) {
  const auto L = measure(kLebesgue, 12);
  const auto t = poly("t");
  mk_c_bound_result c{};
  double per_n[6] = {};
  ASSERT_EQ(mk_c_bound(L.get(), t.get(), 0, &c, per_n, 6), MK_OK);
  EXPECT_EQ(c.n_used, 6u);
  EXPECT_NEAR(per_n[0], std::sqrt(1.0 / 3.0), 1e-12);
  EXPECT_NEAR(c.value, std::pow(1.0 / 13.0, 1.0 / 12.0), 1e-12);

  mk_rayleigh_bounds dd{};
  ASSERT_EQ(mk_dd_bounds(L.get(), t.get(), 4, &dd), MK_OK);
  EXPECT_NEAR(dd.d_lower, 0.046910077030668, 1e-9);
  EXPECT_NEAR(dd.D_upper, 0.953089922969332, 1e-9);

  double r = 0.0;
  ASSERT_EQ(mk_r_bound(L.get(), t.get(), 1, &r), MK_OK);
  EXPECT_NEAR(r, 0.657260, 1e-6);

  mk_archimedean_result arch{};
  ASSERT_EQ(mk_archimedean_bound(L.get(), t.get(), 4, MK_ARCHIMEDEAN_LINEAR, &arch), MK_OK);
  EXPECT_NEAR(arch.value, dd.D_upper, 1e-9);

  const auto x = poly("t");
  const auto y = poly("1 - t");
  const mk_poly* polys[] = {x.get(), y.get()};
  double lo[2], hi[2];
  mk_status st[2];
  ASSERT_EQ(mk_support_box(L.get(), polys, 2, 4, lo, hi, st), MK_OK);
  EXPECT_EQ(st[0], MK_OK);
  EXPECT_NEAR(lo[0], 0.046910077030668, 1e-9);
  EXPECT_NEAR(hi[1], 0.953089922969332, 1e-9);
}

TEST(CApi, DegreeOverflowCode) {
  const auto L = measure(kLebesgue, 4);
  const auto t = poly("t^3");
  mk_c_bound_result c{};
  EXPECT_EQ(mk_c_bound(L.get(), t.get(), 0, &c, nullptr, 0), MK_ERR_DEGREE_OVERFLOW);
}

TEST(CApi, BallCheckReport) {
  const auto L = measure(kCircle, 4);
  const auto x = poly("x", 2);
  const auto y = poly("y", 2);
  const mk_poly* coords[] = {x.get(), y.get()};
  mk_report* raw = nullptr;
  EXPECT_EQ(mk_check_ball(L.get(), nullptr, 0, 2.0, 1, -1.0, &raw), MK_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(mk_check_ball(L.get(), coords, 2, 2.0, 1, -1.0, &raw), MK_OK) << mk_last_error();
  Report pass(raw);
  EXPECT_TRUE(mk_report_passed(pass.get()));
  EXPECT_GT(mk_report_item_count(pass.get()), 0u);
  ASSERT_EQ(mk_check_ball(L.get(), coords, 2, 1.9, 1, -1.0, &raw), MK_OK);
  Report fail(raw);
  EXPECT_FALSE(mk_report_passed(fail.get()));
  ASSERT_GT(mk_report_violation_count(fail.get()), 0u);
  const char* witness = nullptr;
  double value = 0.0;
  ASSERT_EQ(mk_report_violation(fail.get(), 0, &witness, &value), MK_OK);
  EXPECT_LT(value, 0.0);
  EXPECT_NE(std::string(witness), "");
  EXPECT_NE(mk_report_violation(fail.get(), 1000, &witness, &value), MK_OK);
}

TEST(CApi, ProductsAndSchmudgen) {
  const auto L = measure(R"({"atoms": [{"point": [3], "weight": 1}]})", 4);
  const auto up = poly("1 - t");
  const auto down = poly("1 + t");
  const mk_poly* uppers[] = {up.get()};
  const mk_poly* lowers[] = {down.get()};
  mk_report* raw = nullptr;
  ASSERT_EQ(mk_check_products(L.get(), uppers, lowers, 1, 2, -1.0, &raw), MK_OK);
  Report r(raw);
  EXPECT_FALSE(mk_report_passed(r.get()));

  const auto L2 = measure(kLebesgue, 8);
  const auto t = poly("t");
  const auto g = poly("1 - t");
  const mk_poly* constraints[] = {t.get(), g.get()};
  ASSERT_EQ(mk_check_schmudgen(L2.get(), constraints, 2, 2, &raw), MK_OK);
  Report s(raw);
  EXPECT_TRUE(mk_report_passed(s.get()));
}

TEST(CApi, IdentitySuite) {
  mk_report* raw = nullptr;
  ASSERT_EQ(mk_identity_suite(&raw), MK_OK);
  Report r(raw);
  EXPECT_TRUE(mk_report_passed(r.get()));
}

TEST(CApi, OperatorQuadrature) {
  mk_operator* raw = nullptr;
  ASSERT_EQ(mk_operator_from_json(R"({"matrix": [[1,0,0],[0,2,0],[0,0,3]], "vector": [1,1,1]})", &raw),
            MK_OK);
  Operator op(raw);
  EXPECT_EQ(mk_operator_order(op.get()), 3u);
  double alpha = 0.0, beta = 0.0;
  ASSERT_EQ(mk_rayleigh_interval(op.get(), &alpha, &beta), MK_OK);
  EXPECT_NEAR(alpha, 1.0, 1e-14);
  EXPECT_NEAR(beta, 3.0, 1e-14);
  std::vector<double> m(11);
  ASSERT_EQ(mk_operator_moments(op.get(), 10, m.data()), MK_OK);
  EXPECT_NEAR(m[2], 14.0 / 3.0, 1e-13);
  double nodes[5], weights[5];
  size_t count = 0;
  unsigned achievable = 0;
  ASSERT_EQ(mk_quadrature_from_moments(m.data(), 7, 3, nodes, weights, &count, &achievable), MK_OK);
  ASSERT_EQ(count, 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(nodes[i], i + 1.0, 1e-10);
  EXPECT_EQ(mk_quadrature_from_moments(m.data(), 11, 5, nodes, weights, &count, &achievable),
            MK_ERR_RANK_DEFICIENT);
  EXPECT_EQ(achievable, 3u);
}

TEST(CApi, OperatorShapeMismatch) {
  mk_operator* raw = nullptr;
  EXPECT_NE(mk_operator_from_json(R"({"matrix": [[1,0],[0,1]], "vector": [1,1,1]})", &raw), MK_OK);
}

TEST(CApi, ComplexMoments) {
  const double re[] = {0.5};
  const double im[] = {0.0};
  const double w[] = {1.0};
  mk_cmoments* raw = nullptr;
  ASSERT_EQ(mk_cmoments_from_atoms(re, im, w, 1, 8, &raw), MK_OK);
  CMoments f(raw);
  EXPECT_EQ(mk_cmoments_max_level(f.get()), 8u);
  double vr = 0.0, vi = 0.0;
  ASSERT_EQ(mk_cmoments_value(f.get(), 2, 2, &vr, &vi), MK_OK);
  EXPECT_NEAR(vr, 1.0 / 16.0, 1e-15);
  EXPECT_EQ(mk_cmoments_value(f.get(), 9, 0, &vr, &vi), MK_ERR_COVERAGE);

  mk_psd_verdict verdict{};
  ASSERT_EQ(mk_psd_function_check(f.get(), 4, -1.0, &verdict), MK_OK);
  EXPECT_TRUE(verdict.is_psd);
  mk_c_bound_result rs{};
  ASSERT_EQ(mk_r_s_bound(f.get(), 0, 1, &rs, nullptr, 0), MK_OK);
  EXPECT_NEAR(rs.value, 0.5, 1e-14);
  mk_report* rep = nullptr;
  ASSERT_EQ(mk_disc_check(f.get(), 0.5, 1.0, -1.0, &rep), MK_OK);
  Report disc(rep);
  EXPECT_TRUE(mk_report_passed(disc.get()));

  char* s = nullptr;
  ASSERT_EQ(mk_cmoments_to_json(f.get(), &s), MK_OK);
  String text(s);
  mk_cmoments* back = nullptr;
  ASSERT_EQ(mk_cmoments_from_json(text.get(), &back), MK_OK) << mk_last_error();
  CMoments g(back);
  ASSERT_EQ(mk_cmoments_value(g.get(), 3, 3, &vr, &vi), MK_OK);
  EXPECT_NEAR(vr, 1.0 / 64.0, 1e-15);
}

TEST(CApi, AtomsDocument) {
  mk_cmoments* raw = nullptr;
  ASSERT_EQ(mk_cmoments_from_atoms_json(R"({"max_level": 4, "atoms": [{"re": 0, "im": 1, "weight": 1}]})",
                                        8, &raw),
            MK_OK);
  CMoments f(raw);
  EXPECT_EQ(mk_cmoments_max_level(f.get()), 4u);
  double vr = 0.0, vi = 0.0;
  ASSERT_EQ(mk_cmoments_value(f.get(), 0, 1, &vr, &vi), MK_OK);
  EXPECT_NEAR(vi, 1.0, 1e-15);
}

TEST(CApi, NonHermitianTableRejected) {
  mk_cmoments* raw = nullptr;
  EXPECT_EQ(mk_cmoments_from_json(R"({"max_level": 1, "values": [
      {"m": 0, "n": 0, "re": 1}, {"m": 0, "n": 1, "re": 0.5},
      {"m": 1, "n": 0, "re": 0.2}, {"m": 1, "n": 1, "re": 1}]})",
                                  &raw),
            MK_ERR_INVALID_ARGUMENT);
}

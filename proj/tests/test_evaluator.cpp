#include <gtest/gtest.h>

#include <cmath>

#include "chistar/evaluator.hpp"
#include "chistar/forms.hpp"
#include "chistar/random.hpp"
#include "oracles.hpp"

using namespace chistar;

namespace {

constexpr mpfr_prec_t kPrec = 128;

UHPoint point(const Rational& re, const Rational& im, mpfr_prec_t prec = kPrec) {
  return {Interval::of(re, prec), Interval::of(im, prec)};
}

// Random element of SL2(Z) as a word in T^k and S.
Matrix2 random_gamma(DetRng& rng, int length) {
  const Matrix2 S{0, -1, 1, 0};
  Matrix2 g;
  for (int i = 0; i < length; ++i) {
    const long k = rng.integer(-3, 3);
    g = g * Matrix2{1, k, 0, 1} * S;
  }
  return g;
}

// Random point of the fundamental domain with Im <= 3.
UHPoint random_point_in_f(DetRng& rng) {
  for (;;) {
    const Rational re(rng.integer(-5000, 5000), 10000);
    const Rational im(rng.integer(8660, 30000), 10000);
    if (re * re + im * im >= 1) return point(re, im);
  }
}

std::complex<long double> as_complex(const CertifiedValue& v) {
  return {static_cast<long double>(v.mid_re().to_double()), static_cast<long double>(v.mid_im().to_double())};
}

}  // namespace

TEST(Reduction, AlreadyReduced) {
  const auto r = reduce_to_fundamental_domain(point(0, 1));
  EXPECT_TRUE(r.point.re.contains(Rational(0)));
  EXPECT_TRUE(r.point.im.contains(Rational(1)));
  EXPECT_EQ(r.matrix, Matrix2{});
}

TEST(Reduction, Translation) {
  const auto r = reduce_to_fundamental_domain(point(5, 1));
  EXPECT_TRUE(r.point.re.contains(Rational(0)));
  EXPECT_TRUE(r.point.im.contains(Rational(1)));
  EXPECT_EQ(r.matrix, (Matrix2{1, -5, 0, 1}));
}

TEST(Reduction, Inversion) {
  const auto r = reduce_to_fundamental_domain(point(0, Rational(1, 4)));
  EXPECT_TRUE(r.point.re.contains(Rational(0)));
  EXPECT_TRUE(r.point.im.contains(Rational(4)));
  EXPECT_EQ(r.matrix.det(), 1);
  EXPECT_TRUE(in_fundamental_domain(r.point));
}

TEST(Reduction, RandomPointsLandInF) {
  DetRng rng(11);
  for (int i = 0; i < 200; ++i) {
    const UHPoint z = point(Rational(rng.integer(-100000, 100000), 997), Rational(rng.integer(1, 5000), 3001));
    const auto r = reduce_to_fundamental_domain(z);
    EXPECT_TRUE(in_fundamental_domain(r.point));
    EXPECT_EQ(r.matrix.det(), 1);
    const UHPoint back = apply(r.matrix, z);
    EXPECT_TRUE(back.box().overlaps(r.point.box()));
  }
}

TEST(EvalQexp, PoleTermWithTail) {
  const QExpansion pole(-1, {Rational(1)}, 0);
  const UHPoint z = point(0, 2);
  const auto v = eval_qexp(pole, z, Interval::exact(2079, kPrec));
  EXPECT_NEAR(v.mid_re().to_double() / std::exp(4 * M_PI), 1.0, 1e-12);
  // the tail disc widens both coordinates
  EXPECT_LE(v.box().re().radius().to_double(), 2079 * 1.0001);
  EXPECT_GE(v.box().re().radius().to_double(), 2079);
  EXPECT_GE(v.box().im().radius().to_double(), 2079);
}

TEST(EvalQexp, Constant) {
  const auto v = eval_qexp(QExpansion::constant(Rational(1), 5), point(Rational(1, 3), 2), Interval::exact(0, kPrec));
  EXPECT_TRUE(v.contains(Rational(1)));
  EXPECT_LT(v.radius().to_double(), 1e-30);
}

TEST(EvalSeries, RejectsPointsOutsideF) {
  EXPECT_THROW(eval_series(SeriesKind::J, point(0, Rational(1, 2))), std::domain_error);
  EXPECT_THROW(eval_series(SeriesKind::J, point(0, 2), EvalOptions{32, 0}), std::invalid_argument);
}

TEST(EvalJ, ClassicalValues) {
  const auto at_i = eval_j(point(0, 1));
  EXPECT_TRUE(at_i.contains(Rational(1728)));
  EXPECT_LT(at_i.radius().to_double(), 1e-10);
  const auto at_rho = eval_j(QuadraticForm{1, 1, 1}.cm_point(kPrec));
  EXPECT_TRUE(at_rho.contains(Rational(0)));
  EXPECT_LT(at_rho.radius().to_double(), 1e-10);
  const auto at_163 = eval_j(QuadraticForm{1, 1, 41}.cm_point(192), {192, 0});
  EXPECT_TRUE(at_163.contains(Rational(Integer("-262537412640768000"))));
  EXPECT_LT(at_163.radius().to_double(), 1e-10);
}

TEST(EvalChiStar, TableValues) {
  const auto at_i = eval_chi_star(point(0, 1));
  EXPECT_TRUE(at_i.contains(Rational(0)));
  const auto at_7 = eval_chi_star(QuadraticForm{1, 1, 2}.cm_point(kPrec));
  EXPECT_TRUE(at_7.contains(Rational(-1215)));
  EXPECT_LT(at_7.radius().to_double(), 1e-10);
  const auto at_8 = eval_chi_star(QuadraticForm{1, 0, 2}.cm_point(kPrec));
  EXPECT_TRUE(at_8.contains(Rational(2240)));
}

TEST(EvalChiStar, SharedReductionAgrees) {
  const UHPoint z = point(Rational(3, 7), Rational(2, 9));
  const auto pair = eval_j_chi_star(z);
  EXPECT_TRUE(pair.j.overlaps(eval_j(z)));
  EXPECT_TRUE(pair.chi_star.overlaps(eval_chi_star(z)));
}

TEST(EvalJ, MatchesFloatingOracle) {
  DetRng rng(5);
  for (int i = 0; i < 100; ++i) {
    const UHPoint z = random_point_in_f(rng);
    const std::complex<long double> tau(z.re.mid().to_double(), z.im.mid().to_double());
    const auto want_j = oracle::j_value(tau);
    const auto want_c = oracle::chi_star_value(tau);
    const auto got_j = as_complex(eval_j(z));
    const auto got_c = as_complex(eval_chi_star(z));
    EXPECT_LT(std::abs(got_j - want_j), 1e-9L * (1 + std::abs(want_j)));
    EXPECT_LT(std::abs(got_c - want_c), 1e-9L * (1 + std::abs(want_c)));
  }
}

TEST(Invariance, JAndChiStarUnderSL2Z) {
  DetRng rng(17);
  for (int i = 0; i < 60; ++i) {
    const UHPoint z = random_point_in_f(rng);
    const Matrix2 g = random_gamma(rng, 1 + static_cast<int>(rng.integer(0, 3)));
    const UHPoint w = apply(g, z);
    EXPECT_TRUE(eval_j(w).overlaps(eval_j(z)));
    EXPECT_TRUE(eval_chi_star(w).overlaps(eval_chi_star(z)));
  }
}

TEST(Precision, DoublingNeverGivesDisjointEnclosures) {
  DetRng rng(23);
  for (int i = 0; i < 30; ++i) {
    const UHPoint lo = random_point_in_f(rng);
    const UHPoint hi{lo.re.with_precision(256), lo.im.with_precision(256)};
    EXPECT_TRUE(eval_j(lo, {128, 0}).overlaps(eval_j(hi, {256, 0})));
    EXPECT_TRUE(eval_chi_star(lo, {128, 0}).overlaps(eval_chi_star(hi, {256, 0})));
    EXPECT_TRUE(eval_chi_star(lo, {128, 40}).overlaps(eval_chi_star(hi, {256, 80})));
  }
}

TEST(Evaluator, HugeImaginaryPart) {
  const auto v = eval_j(UHPoint::from_decimal("0", "1e6", 128));
  const auto s = v.mid_re().to_string(5);
  EXPECT_NE(s.find("e+2728752"), std::string::npos) << s;
  EXPECT_GT(mpfr_get_exp(v.mid_re().get()), 9000000);
}

#include <gtest/gtest.h>

#include "chistar/qseries.hpp"
#include "oracles.hpp"

using namespace chistar;

namespace {

QExpansion series_of(std::vector<long> coeffs, std::int64_t lead) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  const auto n = static_cast<std::int64_t>(c.size());
  return QExpansion(lead, std::move(c), lead + n);
}

}  // namespace

TEST(Sigma, SmallValues) {
  EXPECT_EQ(sigma(1, 1), 1);
  EXPECT_EQ(sigma(1, 6), 12);
  EXPECT_EQ(sigma(3, 4), 73);
}

TEST(Sigma, MatchesTrialDivision) {
  for (unsigned k : {0u, 1u, 3u, 5u}) {
    const auto table = sigma_table(k, 300);
    for (std::uint64_t n = 1; n < 300; ++n) {
      EXPECT_EQ(sigma(k, n), oracle::sigma(k, n)) << k << " " << n;
      EXPECT_EQ(table[n], oracle::sigma(k, n)) << k << " " << n;
    }
  }
}

TEST(Eisenstein, LeadingCoefficients) {
  const auto e4 = eisenstein(4, 2);
  EXPECT_EQ(e4.order(), 2);
  EXPECT_EQ(e4.coeff(0), 1);
  EXPECT_EQ(e4.coeff(1), 240);
  const auto e6 = eisenstein(6, 2);
  EXPECT_EQ(e6.coeff(1), -504);
  const auto e2 = eisenstein(2, 3);
  EXPECT_EQ(e2.coeff(1), -24);
  EXPECT_EQ(e2.coeff(2), -72);
  EXPECT_THROW(eisenstein(8, 3), std::invalid_argument);
}

TEST(Eisenstein, MatchesOracle) {
  for (int w : {2, 4, 6}) {
    const auto e = eisenstein(w, 40);
    const auto ref = oracle::eisenstein(w, 40);
    for (std::int64_t n = 0; n < 40; ++n) EXPECT_EQ(e.coeff(n), Rational(ref[static_cast<std::size_t>(n)])) << w;
  }
}

TEST(Laurent, GeometricInverse) {
  const auto inv = series_of({1, 1}, 0).invert();
  EXPECT_EQ(inv.order(), 2);
  EXPECT_EQ(inv.coeff(0), 1);
  EXPECT_EQ(inv.coeff(1), -1);
}

TEST(Laurent, LeadCancellation) {
  const auto p = series_of({1}, -1).truncated(0);  // q^{-1} + O(1)
  const auto f = series_of({1, 0}, 1).truncated(2);  // q + O(q^2)
  const auto prod = p * f;
  EXPECT_EQ(prod.order(), 1);
  EXPECT_EQ(prod.coeff(0), 1);
}

TEST(Laurent, SquareOfE4) {
  const auto e4 = eisenstein(4, 2);
  const auto sq = e4 * e4;
  EXPECT_EQ(sq.order(), 2);
  EXPECT_EQ(sq.coeff(0), 1);
  EXPECT_EQ(sq.coeff(1), 480);
}

TEST(Laurent, OrderIsTheMinimum) {
  const auto a = eisenstein(4, 10);
  const auto b = eisenstein(6, 4);
  EXPECT_EQ((a + b).order(), 4);
  EXPECT_EQ((a * b).order(), 4);
  EXPECT_THROW((void)b.coeff(4), std::out_of_range);
}

TEST(Delta, KnownTerms) {
  const auto d2 = delta(2);
  EXPECT_EQ(d2.lead(), 1);
  EXPECT_EQ(d2.coeff(1), 1);
  const auto d3 = delta(3);
  EXPECT_EQ(d3.coeff(2), -24);
  const auto eta5 = eta_product(5);
  const std::vector<long> tau{1, -24, 252, -1472};
  for (std::int64_t n = 1; n < 5; ++n) EXPECT_EQ(eta5.coeff(n), tau[static_cast<std::size_t>(n - 1)]);
}

TEST(Delta, EqualsEtaProductForEveryOrder) {
  for (std::int64_t n : {2, 3, 5, 8, 13, 21, 34, 60}) {
    const auto a = delta(n);
    const auto b = eta_product(n);
    ASSERT_EQ(a.order(), b.order());
    for (std::int64_t k = 0; k < n; ++k) EXPECT_EQ(a.coeff(k), b.coeff(k)) << n << " " << k;
  }
}

TEST(Delta, MatchesOracleProduct) {
  const auto d = delta(50);
  const auto ref = oracle::delta_over_q(49);
  for (std::int64_t n = 1; n < 50; ++n) EXPECT_EQ(d.coeff(n), Rational(ref[static_cast<std::size_t>(n - 1)]));
}

TEST(JExpansion, LeadingTerms) {
  const auto j = j_expansion(2);
  EXPECT_EQ(j.lead(), -1);
  EXPECT_EQ(j.order(), 2);
  EXPECT_EQ(j.coeff(-1), 1);
  EXPECT_EQ(j.coeff(0), 744);
  EXPECT_EQ(j.coeff(1), 196884);
}

TEST(Expansions, MatchOracles) {
  const std::size_t n = 30;
  const auto j = j_expansion(static_cast<std::int64_t>(n) - 1);
  const auto chi = chi_expansion(static_cast<std::int64_t>(n) - 1);
  const auto xi = xi_expansion(static_cast<std::int64_t>(n) - 1);
  const auto rj = oracle::j_times_q(n);
  const auto rc = oracle::chi_times_q(n);
  const auto rx = oracle::xi_times_q(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto e = static_cast<std::int64_t>(k) - 1;
    EXPECT_EQ(j.coeff(e), Rational(rj[k])) << e;
    EXPECT_EQ(chi.coeff(e), Rational(rc[k])) << e;
    EXPECT_EQ(xi.coeff(e), Rational(rx[k])) << e;
  }
}

TEST(Expansions, ConstantTermsOfChiAndXi) {
  EXPECT_EQ(chi_expansion(1).coeff(0), -264);
  EXPECT_EQ(xi_expansion(1).coeff(0), -240);
}

TEST(Expansions, MultiplyBack) {
  const std::int64_t n = 25;
  const auto e2 = eisenstein(2, n + 2);
  const auto e4 = eisenstein(4, n + 2);
  const auto e6 = eisenstein(6, n + 2);
  const auto d = delta(n + 2);
  const auto checks = {std::pair{j_expansion(n) * d, e4 * e4 * e4}, std::pair{chi_expansion(n) * d, e2 * e4 * e6},
                       std::pair{xi_expansion(n) * d, e4 * e6}};
  for (const auto& [lhs, rhs] : checks) {
    const std::int64_t top = std::min(lhs.order(), rhs.order());
    ASSERT_GE(top, n);
    for (std::int64_t k = 0; k < top; ++k) EXPECT_EQ(lhs.coeff(k), rhs.coeff(k)) << k;
  }
}

TEST(Expansions, IntegralCoefficients) {
  for (const auto& f : {j_expansion(80), chi_expansion(80), xi_expansion(80), delta(80)}) {
    for (const auto& c : f.coeffs()) EXPECT_EQ(c.get_den(), 1);
  }
}

TEST(ChiStar, PartsAreChiAndMinusXi) {
  const auto s = chi_star_expansion(20);
  EXPECT_EQ(s.degree(), 1);
  const auto diff = chi_expansion(20) - s.part(0);
  EXPECT_TRUE(diff.is_zero());
  EXPECT_TRUE((s.part(1) + xi_expansion(20)).is_zero());
  EXPECT_TRUE(s.part(2).is_zero());
  const auto one = chi_star_expansion(1);
  EXPECT_EQ(one.part(0).coeff(0), -264);
  EXPECT_EQ(one.part(1).coeff(0), 240);
}

TEST(ChiStar, E2StarParts) {
  const auto s = e2_star_expansion(5);
  EXPECT_EQ(s.part(1).coeff(0), -1);
  EXPECT_EQ(s.part(0).coeff(1), -24);
}

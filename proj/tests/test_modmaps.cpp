#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "chistar/modmaps.hpp"
#include "chistar/qseries.hpp"
#include "chistar/random.hpp"

using namespace chistar;

namespace {

Rational canon(Rational q) {
  q.canonicalize();
  return q;
}

ModularMap jmap(const Rational& level, const Rational& twist) {
  return ModularMap::nonconstant(MapKind::J, level, twist);
}
ModularMap chimap(const Rational& level, const Rational& twist) {
  return ModularMap::nonconstant(MapKind::Chi, level, twist);
}

std::complex<double> as_complex(const Cyclotomic& c) {
  const auto z = c.to_complex(128);
  return {z.re().mid().to_double(), z.im().mid().to_double()};
}

std::complex<double> unit(const Rational& frac) { return std::polar(1.0, 2 * M_PI * frac.get_d()); }

ConsistentPair random_pair(DetRng& rng) {
  const long d = rng.integer(1, 3);
  const Rational level = canon(Rational(rng.integer(1, 6), d));
  const long td = level.get_den().get_si() * rng.integer(1, 2);
  return ConsistentPair::nonconstant(level, canon(Rational(rng.integer(0, td - 1), td)));
}

}  // namespace

TEST(Maps, JMapLevelOne) {
  const auto f = map_expansion(jmap(1, 0), 2);
  const auto j = j_expansion(2);
  ASSERT_EQ(f.lead(), -1);
  for (std::int64_t n = -1; n < 2; ++n) EXPECT_EQ(f.coeff(n), UPoly(Cyclotomic(j.coeff(n)))) << n;
}

TEST(Maps, ChiMapLevelTwoCarriesScaledXi) {
  const auto f = map_expansion(chimap(2, 0), 1);
  EXPECT_EQ(f.lead(), -2);
  const UPoly lead = f.coeff(-2);
  EXPECT_EQ(lead.coeff(0), Cyclotomic(1));
  EXPECT_EQ(lead.coeff(1), Cyclotomic(Rational(-1, 2)));
  // the constant term: chi_0 - u xi_0 / 2
  EXPECT_EQ(f.coeff(0).coeff(0), Cyclotomic(-264));
  EXPECT_EQ(f.coeff(0).coeff(1), Cyclotomic(120));
}

TEST(Maps, TwistedMapCoefficients) {
  // j((tau + 1)/2) = sum c_n zeta_2^n q^{n/2}
  const ModularMap m = jmap(Rational(1, 2), Rational(1, 2));
  const ExpansionFrame frame = ExpansionFrame::for_maps({m});
  EXPECT_EQ(frame.L, 2);
  const auto f = map_expansion(m, 2, frame);
  const auto j = j_expansion(4);
  for (std::int64_t n = -1; n < 4; ++n) {
    const Cyclotomic sign = n % 2 == 0 ? Cyclotomic(1) : Cyclotomic(-1);
    EXPECT_EQ(f.coeff(n), UPoly(sign * Cyclotomic(j.coeff(n)))) << n;
  }
}

TEST(Maps, ConstantMaps) {
  EXPECT_EQ(constant_map_value(ModularMap::constant_at(MapKind::Chi, -7)), Rational(-1215));
  EXPECT_EQ(constant_map_value(ModularMap::constant_at(MapKind::J, -7)), Rational(-3375));
  const auto f = map_expansion(ModularMap::constant_at(MapKind::Chi, -7), 3);
  EXPECT_EQ(f.lead(), 0);
  EXPECT_EQ(f.coeff(0), UPoly(-1215));
  EXPECT_THROW(constant_map_value(ModularMap::constant_at(MapKind::J, -15)), std::invalid_argument);
}

TEST(Maps, JsonRoundTrip) {
  const auto m = ModularMap::from_json(nlohmann::json::parse(R"({"kind": "chi", "level": "3/2", "twist": "5/4"})"));
  EXPECT_EQ(m.level, Rational(3, 2));
  EXPECT_EQ(m.twist, Rational(1, 4));
  EXPECT_EQ(ModularMap::from_json(m.to_json()), m);
  const auto c = ModularMap::from_json(nlohmann::json::parse(R"({"kind": "j", "constant": {"disc": -8, "class": 0}})"));
  EXPECT_TRUE(c.constant);
  EXPECT_EQ(ModularMap::from_json(c.to_json()), c);
  EXPECT_THROW(ConsistentPair(jmap(1, 0), chimap(2, 0)), std::invalid_argument);
}

TEST(Dominant, DistinctLevelsDoNotVanish) {
  const auto d = dominant_term({ConsistentPair::nonconstant(3, 0), ConsistentPair::nonconstant(2, 0),
                                ConsistentPair::nonconstant(1, 0)});
  EXPECT_FALSE(d.vanishes);
  EXPECT_EQ(d.q_exponent, -5);
  EXPECT_EQ(d.u_power, 1);
  EXPECT_EQ(d.coefficient, UPoly::monomial(Cyclotomic(Rational(1, 3) - Rational(1, 2)), 1));
}

TEST(Dominant, EqualLowerMapsVanish) {
  const auto d = dominant_term({ConsistentPair::nonconstant(3, 0), ConsistentPair::nonconstant(2, Rational(1, 2)),
                                ConsistentPair::nonconstant(2, Rational(1, 2))});
  EXPECT_TRUE(d.vanishes);
  EXPECT_TRUE(d.equal_maps);
}

TEST(Dominant, ConstantThirdPair) {
  const auto d = dominant_term({ConsistentPair::nonconstant(3, Rational(1, 3)),
                                ConsistentPair::nonconstant(2, Rational(1, 2)), ConsistentPair::constant_at(-7)});
  EXPECT_FALSE(d.vanishes);
  EXPECT_EQ(d.q_exponent, -5);
  // u lambda1 lambda2 (1/r1 - 1/r2), lambda = e^{-2 pi i twist}
  const std::complex<double> want = unit(Rational(-1, 3)) * unit(Rational(-1, 2)) * (1.0 / 3 - 1.0 / 2);
  EXPECT_LT(std::abs(as_complex(d.coefficient.coeff(1)) - want), 1e-12);
  EXPECT_TRUE(d.coefficient.coeff(0).is_zero());
}

TEST(Dominant, AgreesWithFullExpansion) {
  DetRng rng(101);
  int tested = 0;
  while (tested < 40) {
    std::array<ConsistentPair, 3> pairs{random_pair(rng), random_pair(rng), random_pair(rng)};
    if (rng.integer(0, 4) == 0) pairs[2] = ConsistentPair::constant_at(-7);
    const Rational r1 = pairs[0].f.level;
    if (!(r1 > pairs[1].f.level && r1 > pairs[2].f.level)) continue;
    const auto check = check_dominant_term(pairs);
    EXPECT_TRUE(check.match) << pairs[0].f.to_string() << " | " << pairs[1].f.to_string() << " | "
                             << pairs[2].f.to_string();
    ++tested;
  }
}

TEST(Dominant, NumericCoefficientMatchesFormula) {
  DetRng rng(7);
  int tested = 0;
  while (tested < 30) {
    std::array<ConsistentPair, 3> pairs{random_pair(rng), random_pair(rng), random_pair(rng)};
    const Rational r1 = pairs[0].f.level, r2 = pairs[1].f.level, r3 = pairs[2].f.level;
    if (!(r1 > r2 && r2 > r3)) continue;
    const auto d = dominant_term(pairs);
    const std::complex<double> want = std::conj(unit(pairs[0].f.twist)) * std::conj(unit(pairs[1].f.twist)) *
                                      (1 / r1.get_d() - 1 / r2.get_d());
    EXPECT_LT(std::abs(as_complex(d.coefficient.coeff(1)) - want), 1e-12);
    EXPECT_EQ(d.q_exponent, -(r1 + r2));
    ++tested;
  }
}

TEST(Split, EqualMapsVanish) {
  const auto c = chimap(1, 0);
  const auto s = split_determinant({c, c, c, c, c, c});
  EXPECT_TRUE(s.combined_vanishes);
  EXPECT_TRUE(s.holomorphic_vanishes);
  EXPECT_TRUE(s.nonholomorphic_vanishes);
  EXPECT_GT(s.known_order, 0);
}

TEST(Split, DuplicatedRowsVanish) {
  const auto a = chimap(2, Rational(1, 2));
  const auto b = chimap(1, Rational(1, 3));
  const auto c = chimap(Rational(1, 2), 0);
  const auto s = split_determinant({a, b, c, a, b, c}, 6);
  EXPECT_TRUE(s.combined_vanishes);
  EXPECT_TRUE(s.holomorphic_vanishes);
  EXPECT_TRUE(s.nonholomorphic_vanishes);
}

TEST(Split, GenericHolomorphicPartIsNonzero) {
  const auto s = split_determinant({chimap(2, Rational(1, 2)), chimap(1, 0), chimap(1, Rational(1, 3)), chimap(1, 0),
                                    chimap(1, Rational(2, 3)), chimap(1, Rational(1, 2))});
  EXPECT_FALSE(s.holomorphic_vanishes);
  EXPECT_FALSE(s.combined_vanishes);
  ASSERT_TRUE(leading_monomial(s.holomorphic));
}

TEST(Split, VerdictsAgreeOnGeneratedCases) {
  DetRng rng(55);
  for (int i = 0; i < 30; ++i) {
    std::array<ModularMap, 6> maps;
    for (auto& m : maps) {
      const auto p = random_pair(rng);
      m = p.g;
    }
    if (rng.integer(0, 2) == 0) maps[3] = maps[0], maps[4] = maps[1], maps[5] = maps[2];
    const auto s = split_determinant(maps, 4);
    EXPECT_EQ(s.combined_vanishes, s.holomorphic_vanishes && s.nonholomorphic_vanishes);
    // the parts add back to the whole
    EXPECT_TRUE((s.holomorphic + s.nonholomorphic - s.combined).is_zero());
  }
}

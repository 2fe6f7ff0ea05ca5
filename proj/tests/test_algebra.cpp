#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "chistar/cache.hpp"
#include "chistar/cyclotomic.hpp"
#include "chistar/factor.hpp"
#include "chistar/json_io.hpp"
#include "chistar/random.hpp"
#include "chistar/rational.hpp"

using namespace chistar;

namespace {

QPoly poly(std::initializer_list<long> lowest_first) {
  std::vector<Rational> c;
  for (long v : lowest_first) c.emplace_back(v);
  return QPoly(std::move(c));
}

QPoly power(const QPoly& p, int k) {
  QPoly out = QPoly::constant(1);
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("chistar_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Rational, SimplestBetween) {
  EXPECT_EQ(simplest_rational_between(Rational(1, 4), Rational(1, 2)), Rational(1, 2));
  EXPECT_EQ(simplest_rational_between(Rational(314, 100), Rational(3143, 1000)), Rational(22, 7));
  EXPECT_EQ(simplest_rational_between(Rational(-7, 2), Rational(-3, 1)), Rational(-3));
}

TEST(Rational, Reconstruction) {
  BigFloat r20(128);
  mpfr_set_d(r20.get(), 1e-20, MPFR_RNDU);
  const Interval x = Interval::of(Rational(355, 113), 128).widened(r20);
  const auto r = reconstruct_rational(x, Integer(1000));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, Rational(355, 113));
  EXPECT_FALSE(reconstruct_rational(Interval::pi(128), Integer(1000)));
}

TEST(Rational, Parsing) {
  EXPECT_EQ(parse_rational("-12/8"), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(to_string(Rational(7)), "7");
}

TEST(Poly, DivisionAndGcd) {
  const QPoly a = poly({-1, 0, 1});  // x^2 - 1
  const QPoly b = poly({1, 1});
  const auto [q, r] = QPoly::divmod(a, b);
  EXPECT_EQ(q, poly({-1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(QPoly::gcd(a * poly({2, 1}), poly({2, 1}) * poly({5, 1})), poly({2, 1}));
  const auto inv = QPoly::inverse_mod(poly({0, 1}), poly({1, 0, 1}));
  ASSERT_TRUE(inv);
  EXPECT_EQ((*inv * poly({0, 1})) % poly({1, 0, 1}), QPoly::constant(1));
}

TEST(Factor, KnownIrreducibles) {
  EXPECT_TRUE(is_irreducible_over_q(poly({1, 0, 0, 0, 1})));    // x^4 + 1, reducible mod every prime
  EXPECT_TRUE(is_irreducible_over_q(poly({1, 0, -10, 0, 1})));  // minimal polynomial of sqrt2 + sqrt3
  EXPECT_TRUE(is_irreducible_over_q(poly({-2, 0, 1})));
  EXPECT_FALSE(is_irreducible_over_q(poly({-4, 0, 1})));
  EXPECT_FALSE(is_irreducible_over_q(QPoly::constant(3)));
}

TEST(Factor, RecoversRandomProducts) {
  DetRng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::map<std::vector<Rational>, int> expected;
    QPoly product = QPoly::constant(1);
    const int parts = 1 + static_cast<int>(rng.integer(0, 2));
    for (int k = 0; k < parts; ++k) {
      // monic x^2 + b x + c with negative discriminant stays irreducible
      const long b = rng.integer(-5, 5);
      const long c = b * b + rng.integer(1, 20);
      const QPoly f = poly({c, b, 1});
      const int m = 1 + static_cast<int>(rng.integer(0, 1));
      product = product * power(f, m);
      expected[f.coeffs()] += m;
    }
    const QPoly linear = poly({rng.integer(-9, 9), 1});
    product = product * linear;
    expected[linear.coeffs()] += 1;
    const auto factors = factor_over_q(product.scaled(Rational(3, 7)));
    std::map<std::vector<Rational>, int> got;
    QPoly back = QPoly::constant(1);
    for (const auto& f : factors) {
      got[f.factor.coeffs()] += f.multiplicity;
      back = back * power(f.factor, f.multiplicity);
      EXPECT_TRUE(is_irreducible_over_q(f.factor));
    }
    EXPECT_EQ(got, expected);
    EXPECT_EQ(back, product);
  }
}

TEST(Factor, SwinnertonDyerStyleProduct) {
  // (x^4 - 10x^2 + 1)(x^4 + 1): many modular factors, two true ones
  const auto f = factor_over_q(poly({1, 0, -10, 0, 1}) * poly({1, 0, 0, 0, 1}));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].factor.degree(), 4);
  EXPECT_EQ(f[1].factor.degree(), 4);
}

TEST(Json, RationalRoundTrip) {
  const Rational big(Integer("123456789012345678901234567890"), Integer("11"));
  EXPECT_EQ(rational_from_json(rational_to_json(big)), big);
  EXPECT_EQ(rational_from_json(nlohmann::json(-5)), Rational(-5));
  EXPECT_EQ(rational_from_json(nlohmann::json("3/6")), Rational(1, 2));
  const QPoly p({Rational(1, 3), Rational(0), big});
  EXPECT_EQ(poly_from_json(poly_to_json(p)), p);
}

TEST(Json, ExpansionRoundTrip) {
  const QExpansion e(-1, {Rational(1), Rational(744), Rational(196884)}, 2);
  EXPECT_EQ(expansion_from_json(expansion_to_json(e)).coeffs(), e.coeffs());
  const auto doc = expansion_to_json(e);
  EXPECT_EQ(doc.at("lead"), -1);
  EXPECT_EQ(doc.at("order"), 2);
  EXPECT_EQ(doc.at("coeffs")[1], nlohmann::json::array({744, 1}));
}

TEST(Cache, StoreAndLoad) {
  TempDir dir;
  const ClassPolyCache cache(dir.path());
  EXPECT_FALSE(cache.load(-15, PolyKind::ChiStar));
  const QPoly p({Rational(4322241), Rational(97713), Rational(1)});
  cache.store(-15, PolyKind::ChiStar, p);
  const auto back = cache.load(-15, PolyKind::ChiStar);
  ASSERT_TRUE(back);
  EXPECT_EQ(*back, p);
  EXPECT_FALSE(cache.load(-15, PolyKind::J));
}

TEST(Cache, ChecksumDetectsTampering) {
  TempDir dir;
  const ClassPolyCache cache(dir.path());
  cache.store(-7, PolyKind::ChiStar, QPoly({Rational(1215), Rational(1)}));
  const auto path = cache.path_for(-7, PolyKind::ChiStar);
  std::string text;
  {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto at = text.find("1215");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 4, "1216");
  std::ofstream(path) << text;
  EXPECT_THROW(cache.load(-7, PolyKind::ChiStar), CacheCorruption);
  std::ofstream(path) << "{not json";
  EXPECT_THROW(cache.load(-7, PolyKind::ChiStar), CacheCorruption);
}

TEST(Cache, OtherVersionIsAMiss) {
  TempDir dir;
  const ClassPolyCache cache(dir.path());
  cache.store(-7, PolyKind::J, QPoly({Rational(3375), Rational(1)}));
  const auto path = cache.path_for(-7, PolyKind::J);
  nlohmann::json doc;
  std::ifstream(path) >> doc;
  doc["version"] = kCacheVersion + 1;
  std::ofstream(path) << doc.dump();
  EXPECT_FALSE(cache.load(-7, PolyKind::J));
}

TEST(Cache, HitsMatchColdRuns) {
  TempDir dir;
  const ClassPolyCache cache(dir.path());
  ClassPolyOptions options;
  options.cache = &cache;
  for (long D : {-23L, -56L}) {
    const auto cold = class_polynomial(D, PolyKind::ChiStar, options);
    EXPECT_FALSE(cold.from_cache);
    const auto warm = class_polynomial(D, PolyKind::ChiStar, options);
    EXPECT_TRUE(warm.from_cache);
    EXPECT_EQ(cold.poly, warm.poly);
    EXPECT_EQ(class_polynomial(D, PolyKind::ChiStar).poly, warm.poly);
  }
}

TEST(Fnv, KnownVectors) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Cyclotomic, RootsOfUnity) {
  const Cyclotomic z = Cyclotomic::root_of_unity(Rational(1, 6), 6);
  Cyclotomic p = 1;
  for (int i = 0; i < 6; ++i) p *= z;
  EXPECT_EQ(p, Cyclotomic(1));
  EXPECT_EQ(z * z.conj(), Cyclotomic(1));
  // zeta_3 from zeta_6 and from its own field agree after lifting
  EXPECT_EQ(z * z, Cyclotomic::root_of_unity(Rational(1, 3), 3));
  // 1 + zeta_3 + zeta_3^2 = 0
  const Cyclotomic w = Cyclotomic::root_of_unity(Rational(1, 3), 3);
  EXPECT_TRUE((Cyclotomic(1) + w + w * w).is_zero());
  const auto c = z.to_complex(128);
  EXPECT_NEAR(c.re().mid().to_double(), 0.5, 1e-30);
  EXPECT_NEAR(c.im().mid().to_double(), std::sqrt(3.0) / 2, 1e-15);
}

TEST(Cyclotomic, ExponentsAddModOne) {
  DetRng rng(9);
  for (int i = 0; i < 50; ++i) {
    const long d = rng.integer(1, 12);
    const Rational a(rng.integer(0, d - 1), d);
    const Rational b(rng.integer(0, d - 1), d);
    Rational s = a + b;
    if (s >= 1) s -= 1;
    EXPECT_EQ(Cyclotomic::root_of_unity(a, d) * Cyclotomic::root_of_unity(b, d), Cyclotomic::root_of_unity(s, d));
  }
}

TEST(UPoly, Arithmetic) {
  const UPoly u = UPoly::monomial(1, 1);
  const UPoly p = UPoly(2) + u;
  const UPoly sq = p * p;
  EXPECT_EQ(sq.degree(), 2);
  EXPECT_EQ(sq.coeff(1), Cyclotomic(4));
  EXPECT_EQ((sq - p * p).low_degree(), -1);
  EXPECT_EQ(u.low_degree(), 1);
}

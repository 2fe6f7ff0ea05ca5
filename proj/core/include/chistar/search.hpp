#pragma once

// Effective Andre-Oort for (j, chi*): explicit constants, the discriminant
// bound, exhaustive search of CM points on a curve p(X, Y) = 0, and the
// collinear-triple search.

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chistar/forms.hpp"
#include "chistar/heegner.hpp"
#include "chistar/poly.hpp"

namespace chistar {

class ClassPolyCache;

struct CurveTerm {
  int i = 0;  // power of X (the j coordinate)
  int j = 0;  // power of Y (the chi* coordinate)
  Rational value;
};

/// p(X, Y) with rational coefficients viewed inside a number field of the
/// given degree; the degree only scales the height H(p).
class CurvePolynomial {
 public:
  CurvePolynomial() = default;
  CurvePolynomial(int field_degree, std::vector<CurveTerm> terms);

  /// {field_degree, coeffs: [{i, j, value}]}; value is [num, den], an integer or "num/den".
  static CurvePolynomial from_json(const nlohmann::json& value);
  nlohmann::json to_json() const;

  int field_degree() const { return field_degree_; }
  /// Merged, zero-free, sorted by (i, j).
  const std::vector<CurveTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree max(i + j); 0 for constants.
  int degree() const;
  Rational coeff(int i, int j) const;
  /// (max over coefficients of max(|num|, |den|))^field_degree.
  Integer height() const;
  CurvePolynomial scaled(const Rational& c) const;

  Rational eval(const Rational& x, const Rational& y) const;
  ComplexInterval eval(const ComplexInterval& x, const ComplexInterval& y) const;
  /// p(X, r(X)) reduced modulo m.
  QPoly substitute_mod(const QPoly& r, const QPoly& m) const;

  std::string to_string() const;

 private:
  int field_degree_ = 1;
  std::vector<CurveTerm> terms_;
};

/// Constants of the effective bound. With t = 3/(pi y) and d = deg p the
/// q^{-d} coefficient of p(j, chi*) is c(t) = sum_{i+j=d} a_ij (1 - t)^j;
/// k is its t-adic valuation and A its t^k coefficient.
struct EffectiveConstants {
  int degree = 0;
  int k = 0;
  Rational A;
  Integer height;        // H(p)
  Rational height_a;     // max(H(p), 1/|A|)
  Interval c1;           // bounds |c(t)/t^k - A| <= c1 t for y >= 2
  Interval c2;           // bounds |q^d p(j, chi*) - c(t)| <= c2 |q| for y >= 2
  Interval y1;           // 6 H c1 / pi
  Interval y2;           // log(2 pi^k k! H c2 / 3^k) / (2 pi - 1), or 0
  long d_max = 0;        // ceil(4 max(y1, y2, 2)^2)
  // Set when the leading Y term of the top-degree part is not what fixes A and
  // k (the monomial choice differs from reading off the leading Y term).
  bool leading_term_shifted = false;
  std::vector<std::string> report;  // derivation lines
};

EffectiveConstants derive_c1_c2(const CurvePolynomial& p);
long discriminant_bound(const CurvePolynomial& p);

enum class Verdict { ZeroConfirmed, Nonzero, Undetermined };
std::string to_string(Verdict v);

struct SearchResult {
  long D = 0;
  QuadraticForm form;
  CertifiedValue j{ComplexInterval(64)};
  CertifiedValue chi_star{ComplexInterval(64)};
  CertifiedValue value{ComplexInterval(64)};  // p(j, chi*)
  Verdict verdict = Verdict::Undetermined;
  std::string witness;  // exact argument for confirmed zeros and exact nonzeros
  mpfr_prec_t precision = 0;
};

struct SearchOptions {
  long d_max = 0;
  unsigned workers = 1;
  long target_bits = 32;  // radius target for the first evaluation
  int max_doublings = 3;  // escalation rounds for candidate zeros
  const ClassPolyCache* cache = nullptr;
};

/// Every class of every discriminant with |D| <= d_max, ordered by (|D|, a, b).
std::vector<SearchResult> ao_search(const CurvePolynomial& p, const SearchOptions& options);

/// chi* on the classes of D as a polynomial in j: R with R(j(tau)) = chi*(tau)
/// modulo H_j, recognized from certified values and re-verified at doubled
/// precision. nullopt when recognition fails within the cap.
std::optional<QPoly> chi_star_in_terms_of_j(long D, const QPoly& hj, int max_doublings = 4);

struct CMPoint {
  long D = 0;
  QuadraticForm form;
  CertifiedValue j{ComplexInterval(64)};
  CertifiedValue chi_star{ComplexInterval(64)};
  std::optional<Rational> exact_j;         // known when h(D) = 1
  std::optional<Rational> exact_chi_star;  // known when h(D) = 1
};

enum class Collinearity { NotCollinear, Collinear, Undetermined };
std::string to_string(Collinearity c);

struct CollinearTriple {
  std::array<std::size_t, 3> points{};  // indices into CollinearReport::points
  CertifiedValue det{ComplexInterval(64)};
  std::optional<Rational> exact_det;
  Collinearity verdict = Collinearity::Undetermined;
};

struct CollinearReport {
  long d_max = 0;
  std::vector<CMPoint> points;
  std::size_t triples_tested = 0;
  std::vector<CollinearTriple> hits;  // collinear or undetermined triples only
};

/// All pi-special points (j, chi*) with |D| <= d_max (all classes).
std::vector<CMPoint> cm_points(long d_max, const SearchOptions& options);

/// det [[1, 1, 1], [x1, x2, x3], [y1, y2, y3]] for three points; exact when
/// all three come from class number one.
CollinearTriple triple_determinant(const std::vector<CMPoint>& points, std::array<std::size_t, 3> idx);

CollinearReport collinear_search(const SearchOptions& options);

}  // namespace chistar

#pragma once

// Dense univariate polynomials with exact rational coefficients.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chistar/interval.hpp"

namespace chistar {

class QPoly {
 public:
  QPoly() = default;
  /// coeffs[i] is the coefficient of X^i.
  explicit QPoly(std::vector<Rational> coeffs);

  static QPoly constant(const Rational& c);
  static QPoly x();
  /// prod (X - r) over the given roots.
  static QPoly from_roots(const std::vector<Rational>& roots);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const;
  const Rational& leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }

  QPoly& operator+=(const QPoly& rhs);
  QPoly& operator-=(const QPoly& rhs);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly operator-() const;
  QPoly scaled(const Rational& c) const;
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// (quotient, remainder) with deg remainder < deg b.
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
  friend QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }
  friend QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

  QPoly monic() const;
  QPoly derivative() const;
  /// Monic gcd; zero when both inputs are zero.
  static QPoly gcd(const QPoly& a, const QPoly& b);
  /// Inverse of a modulo m, if gcd(a, m) = 1.
  static std::optional<QPoly> inverse_mod(const QPoly& a, const QPoly& m);

  Rational eval(const Rational& x) const;
  ComplexInterval eval(const ComplexInterval& x) const;

  /// Lowest-terms common denominator of the coefficients.
  Integer common_denominator() const;
  /// The max over coefficients of max(|num|, |den|), or 0 for the zero polynomial.
  Integer naive_height() const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

}  // namespace chistar

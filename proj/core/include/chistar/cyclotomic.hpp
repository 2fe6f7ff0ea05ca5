#pragma once

// Exact arithmetic in Q(zeta_n), elements stored as polynomials in zeta
// reduced modulo the n-th cyclotomic polynomial. Conductor 0 marks a plain
// rational, which mixes freely with any field; two different nonzero
// conductors are lifted to their lcm.

#include <string>
#include <vector>

#include "chistar/interval.hpp"
#include "chistar/poly.hpp"

namespace chistar {

/// Phi_n, cached.
const QPoly& cyclotomic_polynomial(long n);

class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(int c) : value_(QPoly::constant(c)) {}  // NOLINT: ring literal
  Cyclotomic(const Rational& c) : value_(QPoly::constant(c)) {}  // NOLINT

  /// e^{2 pi i frac} inside Q(zeta_n); n must be a multiple of frac's denominator.
  static Cyclotomic root_of_unity(const Rational& frac, long n);

  long conductor() const { return n_; }
  const QPoly& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_rational() const { return value_.degree() <= 0; }

  /// The same element inside Q(zeta_m), m a multiple of the conductor.
  Cyclotomic lifted(long m) const;

  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator-=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Cyclotomic& rhs);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  Cyclotomic operator-() const;
  /// Complex conjugation, zeta -> zeta^{-1}.
  Cyclotomic conj() const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  ComplexInterval to_complex(mpfr_prec_t prec) const;
  /// Polynomial in z = zeta_n, e.g. "2*z^3 - 1/2 (n = 12)".
  std::string to_string() const;

 private:
  Cyclotomic(long n, QPoly value);
  static long common(long a, long b);

  long n_ = 0;
  QPoly value_;
};

/// Polynomial in the symbol u = 3/(pi y) with cyclotomic coefficients.
class UPoly {
 public:
  UPoly() = default;
  UPoly(int c) : UPoly(Cyclotomic(c)) {}  // NOLINT: ring literal
  UPoly(const Cyclotomic& c);             // NOLINT
  explicit UPoly(std::vector<Cyclotomic> coeffs);

  static UPoly monomial(const Cyclotomic& c, int power);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of u^k (zero beyond the degree).
  Cyclotomic coeff(int k) const;
  const std::vector<Cyclotomic>& coeffs() const { return coeffs_; }
  /// Lowest k with a nonzero coefficient, -1 for zero.
  int low_degree() const;

  UPoly& operator+=(const UPoly& rhs);
  UPoly& operator-=(const UPoly& rhs);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Cyclotomic> coeffs_;
};

}  // namespace chistar

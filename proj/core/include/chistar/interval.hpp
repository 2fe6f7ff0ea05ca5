#pragma once

// Outward-rounded interval arithmetic on MPFR.
//
// Every operation rounds the lower endpoint toward -inf and the upper endpoint
// toward +inf, so an Interval always encloses the exact real it stands for.
// ComplexInterval is a rectangle of two Intervals; CertifiedValue is the
// midpoint/radius view handed to callers.

#include <mpfr.h>

#include <gmpxx.h>

#include <string>

namespace chistar {

using Integer = mpz_class;
using Rational = mpq_class;

/// RAII owner of an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  /// Scientific notation with `digits` significant digits (0 = enough to round-trip).
  std::string to_string(int digits = 0) const;
  /// Exact rational value (finite numbers only).
  Rational to_rational() const;

 private:
  mpfr_t value_;
};

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);

  static Interval exact(long value, mpfr_prec_t prec);
  static Interval of(const Integer& value, mpfr_prec_t prec);
  static Interval of(const Rational& value, mpfr_prec_t prec);
  /// Encloses the decimal literal `text` (e.g. "0.005", "1.011").
  static Interval decimal(const std::string& text, mpfr_prec_t prec);
  static Interval hull(const BigFloat& lo, const BigFloat& hi);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval pi(mpfr_prec_t prec);
  static Interval euler_gamma(mpfr_prec_t prec);
  static Interval log2_const(mpfr_prec_t prec);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);
  Interval operator-() const;

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

  Interval& mul_si(long k);
  Interval& div_si(long k);
  /// Multiplies by 2^e exactly.
  Interval& mul_2exp(long e);

  bool contains(const Rational& value) const;
  bool contains_zero() const;
  bool is_positive() const;
  bool is_negative() const;
  bool overlaps(const Interval& other) const;
  /// True when every point of *this is < every point of `other`.
  bool certainly_less(const Interval& other) const;
  bool certainly_less_equal(const Interval& other) const;

  BigFloat mid() const;
  /// Upper bound on max(hi - mid, mid - lo).
  BigFloat radius() const;
  /// Upper bound on the width.
  BigFloat width() const;
  double upper() const { return hi_.to_double(MPFR_RNDU); }
  double lower() const { return lo_.to_double(MPFR_RNDD); }
  /// Smallest rational upper bound representable from the upper endpoint.
  Rational upper_rational() const { return hi_.to_rational(); }
  Rational lower_rational() const { return lo_.to_rational(); }

  /// Same enclosure re-rounded outward at a new precision.
  Interval with_precision(mpfr_prec_t prec) const;
  /// [lo - r, hi + r].
  Interval widened(const BigFloat& r) const;
  /// Enclosure of {|x| : x in *this}.
  Interval magnitude() const;

  friend Interval sqr(const Interval& x);
  friend Interval sqrt(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval cos(const Interval& x);
  friend Interval sin(const Interval& x);
  friend Interval pow(const Interval& x, unsigned long n);
  friend Interval max(const Interval& a, const Interval& b);

  std::string to_string(int digits = 20) const;

 private:
  Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  BigFloat lo_;
  BigFloat hi_;
};

class ComplexInterval {
 public:
  explicit ComplexInterval(mpfr_prec_t prec = 128) : re_(prec), im_(prec) {}
  ComplexInterval(Interval re, Interval im) : re_(std::move(re)), im_(std::move(im)) {}

  static ComplexInterval real(Interval re);

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }
  Interval& re() { return re_; }
  Interval& im() { return im_; }
  mpfr_prec_t precision() const { return re_.precision(); }

  ComplexInterval& operator+=(const ComplexInterval& rhs);
  ComplexInterval& operator-=(const ComplexInterval& rhs);
  ComplexInterval& operator*=(const ComplexInterval& rhs);
  ComplexInterval& operator*=(const Interval& rhs);
  ComplexInterval& operator/=(const ComplexInterval& rhs);
  ComplexInterval operator-() const { return {-re_, -im_}; }

  friend ComplexInterval operator+(ComplexInterval a, const ComplexInterval& b) { return a += b; }
  friend ComplexInterval operator-(ComplexInterval a, const ComplexInterval& b) { return a -= b; }
  friend ComplexInterval operator*(ComplexInterval a, const ComplexInterval& b) { return a *= b; }
  friend ComplexInterval operator*(ComplexInterval a, const Interval& b) { return a *= b; }
  friend ComplexInterval operator/(ComplexInterval a, const ComplexInterval& b) { return a /= b; }

  ComplexInterval conj() const { return {re_, -im_}; }
  Interval norm_sqr() const;
  Interval abs() const;
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool overlaps(const ComplexInterval& other) const {
    return re_.overlaps(other.re_) && im_.overlaps(other.im_);
  }
  /// Adds the square [-r, r] x [-r, r], which contains the disc of radius r.
  ComplexInterval widened(const BigFloat& r) const { return {re_.widened(r), im_.widened(r)}; }
  ComplexInterval with_precision(mpfr_prec_t prec) const {
    return {re_.with_precision(prec), im_.with_precision(prec)};
  }

 private:
  Interval re_;
  Interval im_;
};

/// Midpoint and rigorous radius: the exact value lies in the closed disc.
class CertifiedValue {
 public:
  explicit CertifiedValue(ComplexInterval box) : box_(std::move(box)) {}

  const ComplexInterval& box() const { return box_; }
  BigFloat mid_re() const { return box_.re().mid(); }
  BigFloat mid_im() const { return box_.im().mid(); }
  /// Radius of a disc around (mid_re, mid_im) containing the box.
  BigFloat radius() const;

  bool contains(const Rational& real_value) const {
    return box_.re().contains(real_value) && box_.im().contains(Rational(0));
  }
  bool excludes_zero() const { return !box_.contains_zero(); }
  bool overlaps(const CertifiedValue& other) const { return box_.overlaps(other.box_); }

 private:
  ComplexInterval box_;
};

}  // namespace chistar

#include "chistar/rational.hpp"

#include <stdexcept>

namespace chistar {

namespace {

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// Simplest rational in [lo, hi] with 0 <= lo <= hi.
Rational simplest_nonnegative(Rational lo, Rational hi) {
  // Continued-fraction walk: accumulate convergents p/q as matrices.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (;;) {
    const Integer a = floor_of(lo);
    if (Rational(a) == lo || a < floor_of(hi)) {
      // An integer lies in [lo, hi]: take the smallest one >= lo.
      const Integer t = (Rational(a) == lo) ? a : a + 1;
      return Rational(t * p1 + p0, t * q1 + q0);
    }
    // Same integer part: descend into the reciprocal of the fractional parts.
    const Integer p2 = a * p1 + p0;
    const Integer q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Rational flo = lo - a;
    const Rational fhi = hi - a;
    lo = 1 / fhi;
    hi = 1 / flo;
  }
}

}  // namespace

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_rational_between: empty interval");
  if (lo <= 0 && hi >= 0) return Rational(0);
  Rational out;
  if (lo > 0) {
    out = simplest_nonnegative(lo, hi);
  } else {
    out = -simplest_nonnegative(-hi, -lo);
  }
  out.canonicalize();
  return out;
}

std::optional<Rational> reconstruct_rational(const Interval& x, const Integer& max_den) {
  if (!mpfr_number_p(x.lo().get()) || !mpfr_number_p(x.hi().get())) return std::nullopt;
  const Rational q = simplest_rational_between(x.lower_rational(), x.upper_rational());
  if (q.get_den() > max_den) return std::nullopt;
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational out;
  if (out.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
  if (out.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  out.canonicalize();
  return out;
}

long accurate_bits(const Interval& x) {
  const BigFloat w = x.width();
  if (mpfr_zero_p(w.get())) return static_cast<long>(x.precision());
  if (!mpfr_number_p(w.get())) return -(1L << 30);
  return -static_cast<long>(mpfr_get_exp(w.get()));
}

}  // namespace chistar

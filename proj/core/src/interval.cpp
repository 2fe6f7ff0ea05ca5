#include "chistar/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace chistar {

namespace {

// MPFR keeps the exponent range per thread; widen it before any value is
// created so that e^{2 pi y} for large y never overflows.
void ensure_exponent_range() {
  thread_local const bool done = [] {
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    return true;
  }();
  (void)done;
}

enum class Sign { Positive, Negative, Mixed };

Sign sign_of(const Interval& x) {
  if (mpfr_sgn(x.lo().get()) >= 0) return Sign::Positive;
  if (mpfr_sgn(x.hi().get()) <= 0) return Sign::Negative;
  return Sign::Mixed;
}

mpfr_prec_t max_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t prec) {
  ensure_exponent_range();
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(mpfr_get_str_ndigits(10, precision()));
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Re", digits - 1, value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

Rational BigFloat::to_rational() const {
  if (!mpfr_number_p(value_)) throw std::domain_error("to_rational: non-finite value");
  Rational out;
  mpfr_get_q(out.get_mpq_t(), value_);
  return out;
}

// ---------------------------------------------------------------- Interval

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval Interval::exact(long value, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_si(out.lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(out.hi_.get(), value, MPFR_RNDU);
  return out;
}

Interval Interval::of(const Integer& value, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_z(out.lo_.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_.get(), value.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::of(const Rational& value, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_q(out.lo_.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_.get(), value.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval Interval::decimal(const std::string& text, mpfr_prec_t prec) {
  Interval out(prec);
  if (mpfr_set_str(out.lo_.get(), text.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(out.hi_.get(), text.c_str(), 10, MPFR_RNDU) != 0) {
    throw std::invalid_argument("Interval::decimal: cannot parse '" + text + "'");
  }
  return out;
}

Interval Interval::hull(const BigFloat& lo, const BigFloat& hi) {
  const mpfr_prec_t prec = std::max(lo.precision(), hi.precision());
  Interval out(prec);
  mpfr_set(out.lo_.get(), lo.get(), MPFR_RNDD);
  mpfr_set(out.hi_.get(), hi.get(), MPFR_RNDU);
  if (mpfr_greater_p(out.lo_.get(), out.hi_.get())) mpfr_swap(out.lo_.get(), out.hi_.get());
  return out;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval out(max_prec(a, b));
  mpfr_min(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_const_pi(out.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(out.hi_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::euler_gamma(mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_const_euler(out.lo_.get(), MPFR_RNDD);
  mpfr_const_euler(out.hi_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::log2_const(mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_const_log2(out.lo_.get(), MPFR_RNDD);
  mpfr_const_log2(out.hi_.get(), MPFR_RNDU);
  return out;
}

Interval& Interval::operator+=(const Interval& rhs) {
  const mpfr_prec_t prec = max_prec(*this, rhs);
  BigFloat lo(prec), hi(prec);
  mpfr_add(lo.get(), lo_.get(), rhs.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi_.get(), rhs.hi_.get(), MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
  const mpfr_prec_t prec = max_prec(*this, rhs);
  BigFloat lo(prec), hi(prec);
  mpfr_sub(lo.get(), lo_.get(), rhs.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), hi_.get(), rhs.lo_.get(), MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator*=(const Interval& rhs) {
  const mpfr_prec_t prec = max_prec(*this, rhs);
  BigFloat lo(prec), hi(prec);
  const Sign sa = sign_of(*this);
  const Sign sb = sign_of(rhs);
  const auto& a = *this;
  const auto& b = rhs;
  auto set = [&](mpfr_srcptr l1, mpfr_srcptr l2, mpfr_srcptr h1, mpfr_srcptr h2) {
    mpfr_mul(lo.get(), l1, l2, MPFR_RNDD);
    mpfr_mul(hi.get(), h1, h2, MPFR_RNDU);
  };
  if (sa == Sign::Positive && sb == Sign::Positive) {
    set(a.lo_.get(), b.lo_.get(), a.hi_.get(), b.hi_.get());
  } else if (sa == Sign::Positive && sb == Sign::Negative) {
    set(a.hi_.get(), b.lo_.get(), a.lo_.get(), b.hi_.get());
  } else if (sa == Sign::Negative && sb == Sign::Positive) {
    set(a.lo_.get(), b.hi_.get(), a.hi_.get(), b.lo_.get());
  } else if (sa == Sign::Negative && sb == Sign::Negative) {
    set(a.hi_.get(), b.hi_.get(), a.lo_.get(), b.lo_.get());
  } else if (sa == Sign::Positive && sb == Sign::Mixed) {
    set(a.hi_.get(), b.lo_.get(), a.hi_.get(), b.hi_.get());
  } else if (sa == Sign::Negative && sb == Sign::Mixed) {
    set(a.lo_.get(), b.hi_.get(), a.lo_.get(), b.lo_.get());
  } else if (sa == Sign::Mixed && sb == Sign::Positive) {
    set(a.lo_.get(), b.hi_.get(), a.hi_.get(), b.hi_.get());
  } else if (sa == Sign::Mixed && sb == Sign::Negative) {
    set(a.hi_.get(), b.lo_.get(), a.lo_.get(), b.lo_.get());
  } else {
    BigFloat t(prec);
    mpfr_mul(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_mul(t.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    mpfr_mul(hi.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDU);
    mpfr_mul(t.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator/=(const Interval& rhs) {
  if (rhs.contains_zero()) throw std::domain_error("Interval division by an interval containing zero");
  const mpfr_prec_t prec = max_prec(*this, rhs);
  Interval inv(prec);
  mpfr_ui_div(inv.lo_.get(), 1, rhs.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_.get(), 1, rhs.lo_.get(), MPFR_RNDU);
  return *this *= inv;
}

Interval Interval::operator-() const {
  Interval out(precision());
  mpfr_neg(out.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(out.hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

Interval& Interval::mul_si(long k) {
  if (k >= 0) {
    mpfr_mul_si(lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_mul_si(hi_.get(), hi_.get(), k, MPFR_RNDU);
  } else {
    BigFloat lo(precision()), hi(precision());
    mpfr_mul_si(lo.get(), hi_.get(), k, MPFR_RNDD);
    mpfr_mul_si(hi.get(), lo_.get(), k, MPFR_RNDU);
    lo_ = std::move(lo);
    hi_ = std::move(hi);
  }
  return *this;
}

Interval& Interval::div_si(long k) {
  if (k == 0) throw std::domain_error("Interval::div_si by zero");
  if (k > 0) {
    mpfr_div_si(lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_div_si(hi_.get(), hi_.get(), k, MPFR_RNDU);
  } else {
    BigFloat lo(precision()), hi(precision());
    mpfr_div_si(lo.get(), hi_.get(), k, MPFR_RNDD);
    mpfr_div_si(hi.get(), lo_.get(), k, MPFR_RNDU);
    lo_ = std::move(lo);
    hi_ = std::move(hi);
  }
  return *this;
}

Interval& Interval::mul_2exp(long e) {
  mpfr_mul_2si(lo_.get(), lo_.get(), e, MPFR_RNDD);
  mpfr_mul_2si(hi_.get(), hi_.get(), e, MPFR_RNDU);
  return *this;
}

bool Interval::contains(const Rational& value) const {
  return mpfr_cmp_q(lo_.get(), value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), value.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
bool Interval::is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_.get()) < 0; }

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_.get(), other.hi_.get()) && mpfr_lessequal_p(other.lo_.get(), hi_.get());
}

bool Interval::certainly_less(const Interval& other) const { return mpfr_less_p(hi_.get(), other.lo_.get()); }

bool Interval::certainly_less_equal(const Interval& other) const {
  return mpfr_lessequal_p(hi_.get(), other.lo_.get());
}

BigFloat Interval::mid() const {
  BigFloat out(precision());
  mpfr_add(out.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(out.get(), out.get(), 1, MPFR_RNDN);
  return out;
}

BigFloat Interval::radius() const {
  const BigFloat m = mid();
  BigFloat a(64), b(64);
  mpfr_sub(a.get(), hi_.get(), m.get(), MPFR_RNDU);
  mpfr_sub(b.get(), m.get(), lo_.get(), MPFR_RNDU);
  mpfr_max(a.get(), a.get(), b.get(), MPFR_RNDU);
  return a;
}

BigFloat Interval::width() const {
  BigFloat out(64);
  mpfr_sub(out.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::with_precision(mpfr_prec_t prec) const {
  Interval out(prec);
  mpfr_set(out.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(out.hi_.get(), hi_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::widened(const BigFloat& r) const {
  Interval out(precision());
  mpfr_sub(out.lo_.get(), lo_.get(), r.get(), MPFR_RNDD);
  mpfr_add(out.hi_.get(), hi_.get(), r.get(), MPFR_RNDU);
  return out;
}

Interval Interval::magnitude() const {
  switch (sign_of(*this)) {
    case Sign::Positive:
      return *this;
    case Sign::Negative:
      return -*this;
    case Sign::Mixed:
      break;
  }
  Interval out(precision());
  mpfr_set_zero(out.lo_.get(), 1);
  BigFloat neg(precision());
  mpfr_neg(neg.get(), lo_.get(), MPFR_RNDU);
  mpfr_max(out.hi_.get(), neg.get(), hi_.get(), MPFR_RNDU);
  return out;
}

Interval sqr(const Interval& x) { return pow(x, 2); }

Interval sqrt(const Interval& x) {
  if (x.is_negative()) throw std::domain_error("sqrt of a negative interval");
  Interval out(x.precision());
  if (mpfr_sgn(x.lo_.get()) <= 0) {
    mpfr_set_zero(out.lo_.get(), 1);
  } else {
    mpfr_sqrt(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
  }
  mpfr_sqrt(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return out;
}

Interval exp(const Interval& x) {
  Interval out(x.precision());
  mpfr_exp(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_exp(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return out;
}

Interval log(const Interval& x) {
  if (!x.is_positive()) throw std::domain_error("log of an interval not bounded away from zero");
  Interval out(x.precision());
  mpfr_log(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return out;
}

namespace {

// cos and sin are 1-Lipschitz: f([m - w, m + w]) lies within w of f(m).
template <class Fn>
Interval lipschitz_trig(const Interval& x, Fn fn) {
  const mpfr_prec_t prec = x.precision();
  const BigFloat m = x.mid();
  const BigFloat w = x.radius();
  BigFloat lo(prec), hi(prec);
  fn(lo.get(), m.get(), MPFR_RNDD);
  fn(hi.get(), m.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), lo.get(), w.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi.get(), w.get(), MPFR_RNDU);
  if (mpfr_cmp_si(lo.get(), -1) < 0) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi.get(), 1) > 0) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
  return Interval::hull(lo, hi);
}

}  // namespace

Interval cos(const Interval& x) { return lipschitz_trig(x, mpfr_cos); }
Interval sin(const Interval& x) { return lipschitz_trig(x, mpfr_sin); }

Interval pow(const Interval& x, unsigned long n) {
  Interval out(x.precision());
  if (n == 0) {
    mpfr_set_ui(out.lo_.get(), 1, MPFR_RNDD);
    mpfr_set_ui(out.hi_.get(), 1, MPFR_RNDU);
    return out;
  }
  const bool even = (n % 2) == 0;
  switch (sign_of(x)) {
    case Sign::Positive:
      mpfr_pow_ui(out.lo_.get(), x.lo_.get(), n, MPFR_RNDD);
      mpfr_pow_ui(out.hi_.get(), x.hi_.get(), n, MPFR_RNDU);
      break;
    case Sign::Negative:
      if (even) {
        mpfr_pow_ui(out.lo_.get(), x.hi_.get(), n, MPFR_RNDD);
        mpfr_pow_ui(out.hi_.get(), x.lo_.get(), n, MPFR_RNDU);
      } else {
        mpfr_pow_ui(out.lo_.get(), x.lo_.get(), n, MPFR_RNDD);
        mpfr_pow_ui(out.hi_.get(), x.hi_.get(), n, MPFR_RNDU);
      }
      break;
    case Sign::Mixed:
      if (even) {
        const Interval m = x.magnitude();
        mpfr_set_zero(out.lo_.get(), 1);
        mpfr_pow_ui(out.hi_.get(), m.hi_.get(), n, MPFR_RNDU);
      } else {
        mpfr_pow_ui(out.lo_.get(), x.lo_.get(), n, MPFR_RNDD);
        mpfr_pow_ui(out.hi_.get(), x.hi_.get(), n, MPFR_RNDU);
      }
      break;
  }
  return out;
}

Interval max(const Interval& a, const Interval& b) {
  Interval out(max_prec(a, b));
  mpfr_max(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return out;
}

std::string Interval::to_string(int digits) const {
  return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
}

// --------------------------------------------------------- ComplexInterval

ComplexInterval ComplexInterval::real(Interval re) {
  Interval im(re.precision());
  return {std::move(re), std::move(im)};
}

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

ComplexInterval& ComplexInterval::operator-=(const ComplexInterval& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

ComplexInterval& ComplexInterval::operator*=(const ComplexInterval& rhs) {
  Interval re = re_ * rhs.re_ - im_ * rhs.im_;
  Interval im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexInterval& ComplexInterval::operator*=(const Interval& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

ComplexInterval& ComplexInterval::operator/=(const ComplexInterval& rhs) {
  const Interval denom = rhs.norm_sqr();
  *this *= rhs.conj();
  re_ /= denom;
  im_ /= denom;
  return *this;
}

Interval ComplexInterval::norm_sqr() const { return sqr(re_) + sqr(im_); }

Interval ComplexInterval::abs() const { return sqrt(norm_sqr()); }

// ---------------------------------------------------------- CertifiedValue

BigFloat CertifiedValue::radius() const {
  const BigFloat rr = box_.re().radius();
  const BigFloat ri = box_.im().radius();
  BigFloat out(64);
  mpfr_hypot(out.get(), rr.get(), ri.get(), MPFR_RNDU);
  return out;
}

}  // namespace chistar

#include "chistar/evaluator.hpp"

#include <cmath>
#include <stdexcept>

namespace chistar {

namespace {

constexpr mpfr_prec_t kGuardBits = 24;

Interval two_pi(mpfr_prec_t prec) { return Interval::pi(prec).mul_si(2); }

// log2 |1/q| lower bound, i.e. 2 pi y / log 2 using the lower end of y.
long inverse_q_bits(const UHPoint& z) {
  const double y = z.im.lower();
  if (y <= 0) return 0;
  const double bits = 2.0 * M_PI * y / M_LN2;
  if (bits > 4.0e18) return static_cast<long>(4.0e18);
  return static_cast<long>(std::floor(bits));
}

const QExpansion& series_for(SeriesKind kind, std::int64_t order, QExpansion& storage) {
  switch (kind) {
    case SeriesKind::E2: storage = eisenstein(2, order); break;
    case SeriesKind::E4: storage = eisenstein(4, order); break;
    case SeriesKind::E6: storage = eisenstein(6, order); break;
    case SeriesKind::Delta: storage = delta(std::max<std::int64_t>(order, 2)); break;
    case SeriesKind::J: storage = j_expansion(order); break;
    case SeriesKind::Chi: storage = chi_expansion(order); break;
    case SeriesKind::Xi: storage = xi_expansion(order); break;
  }
  return storage;
}

// Stored coefficients of f at q, by Horner in q with the q^lead factor split off.
ComplexInterval horner(const QExpansion& f, const ComplexInterval& q, const ComplexInterval& q_inv) {
  const mpfr_prec_t prec = q.precision();
  ComplexInterval acc(prec);
  const auto& c = f.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc *= q;
    acc.re() += Interval::of(c[k], prec);
  }
  const auto lead = f.lead();
  if (lead < 0) {
    ComplexInterval p = q_inv;
    for (std::int64_t i = 1; i < -lead; ++i) p *= q_inv;
    acc *= p;
  } else {
    for (std::int64_t i = 0; i < lead; ++i) acc *= q;
  }
  return acc;
}

}  // namespace

UHPoint UHPoint::from_decimal(const std::string& re, const std::string& im, mpfr_prec_t prec) {
  UHPoint z{Interval::decimal(re, prec), Interval::decimal(im, prec)};
  if (!z.im.is_positive()) throw std::invalid_argument("point is not in the upper half-plane");
  return z;
}

UHPoint UHPoint::from_box(ComplexInterval z) {
  if (!z.im().is_positive()) throw std::invalid_argument("point is not in the upper half-plane");
  return {z.re(), z.im()};
}

UHPoint apply(const Matrix2& g, const UHPoint& z) {
  const mpfr_prec_t prec = z.precision();
  const Interval a = Interval::of(g.a, prec);
  const Interval b = Interval::of(g.b, prec);
  const Interval c = Interval::of(g.c, prec);
  const Interval d = Interval::of(g.d, prec);
  // |c z + d|^2 = (c x + d)^2 + (c y)^2.
  const Interval cxd = c * z.re + d;
  const Interval cy = c * z.im;
  const Interval denom = sqr(cxd) + sqr(cy);
  // Re((a z + b) conj(c z + d)) = (a x + b)(c x + d) + a c y^2.
  const Interval re = ((a * z.re + b) * cxd + a * c * sqr(z.im)) / denom;
  const Interval im = Interval::of(g.det(), prec) * z.im / denom;
  return {re, im};
}

Reduction reduce_to_fundamental_domain(const UHPoint& z) {
  if (!z.im.is_positive()) throw std::domain_error("reduce_to_fundamental_domain: Im z must be positive");
  const mpfr_prec_t prec = z.precision() + kGuardBits;
  BigFloat x = z.re.mid();
  BigFloat y = z.im.mid();
  mpfr_prec_round(x.get(), prec, MPFR_RNDN);
  mpfr_prec_round(y.get(), prec, MPFR_RNDN);
  Matrix2 m;
  BigFloat n(prec), norm(prec), t(prec);
  // Points within eps of the unit circle count as on it; otherwise rounding of
  // the midpoint could bounce a boundary point between z and -1/z forever.
  BigFloat lower(prec), upper(prec);
  mpfr_set_ui_2exp(t.get(), 1, -static_cast<mpfr_exp_t>(prec / 2), MPFR_RNDN);
  mpfr_ui_sub(lower.get(), 1, t.get(), MPFR_RNDN);
  mpfr_add_ui(upper.get(), t.get(), 1, MPFR_RNDN);
  const Matrix2 s{0, -1, 1, 0};
  for (int iter = 0; iter < 100000; ++iter) {
    // x -> x - floor(x + 1/2) lands in [-1/2, 1/2), sending +1/2 to -1/2.
    mpfr_set_d(t.get(), 0.5, MPFR_RNDN);
    mpfr_add(t.get(), x.get(), t.get(), MPFR_RNDN);
    mpfr_floor(n.get(), t.get());
    if (!mpfr_zero_p(n.get())) {
      Integer shift;
      mpfr_get_z(shift.get_mpz_t(), n.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), n.get(), MPFR_RNDN);
      m = Matrix2{1, -shift, 0, 1} * m;
    }
    mpfr_sqr(norm.get(), x.get(), MPFR_RNDN);
    mpfr_fma(norm.get(), y.get(), y.get(), norm.get(), MPFR_RNDN);
    const bool inside = mpfr_less_p(norm.get(), lower.get());
    const bool on_circle = !inside && mpfr_lessequal_p(norm.get(), upper.get());
    // On the unit circle prefer Re z <= 0 (the S image of the other half).
    mpfr_set_ui_2exp(t.get(), 1, -static_cast<mpfr_exp_t>(prec / 2), MPFR_RNDN);
    const bool flip = on_circle && mpfr_greater_p(x.get(), t.get());
    if (!inside && !flip) break;
    // S: z -> -1/z = (-x + i y) / |z|^2.
    mpfr_neg(x.get(), x.get(), MPFR_RNDN);
    mpfr_div(x.get(), x.get(), norm.get(), MPFR_RNDN);
    mpfr_div(y.get(), y.get(), norm.get(), MPFR_RNDN);
    m = s * m;
    if (flip) break;
  }
  if (m == Matrix2{}) return {z, m};
  return {apply(m, z), m};
}

ComplexInterval q_of(const UHPoint& z) {
  const mpfr_prec_t prec = z.precision();
  const Interval tp = two_pi(prec);
  const Interval mag = exp(-(tp * z.im));
  const Interval arg = tp * z.re;
  return {mag * cos(arg), mag * sin(arg)};
}

ComplexInterval q_inverse_of(const UHPoint& z) {
  const mpfr_prec_t prec = z.precision();
  const Interval tp = two_pi(prec);
  const Interval mag = exp(tp * z.im);
  const Interval arg = tp * z.re;
  return {mag * cos(arg), -(mag * sin(arg))};
}

bool in_fundamental_domain(const UHPoint& z) {
  const mpfr_prec_t prec = z.precision();
  Interval slack = Interval::exact(1, prec);
  slack.mul_2exp(-16);
  Interval half = Interval::exact(1, prec);
  half.mul_2exp(-1);
  if (!z.re.magnitude().certainly_less_equal(half + slack)) return false;
  const Interval norm = sqr(z.re) + sqr(z.im);
  return (Interval::exact(1, prec) - slack).certainly_less_equal(norm);
}

CertifiedValue eval_qexp(const QExpansion& f, const UHPoint& z, const Interval& tail_const) {
  if (!in_fundamental_domain(z)) throw std::domain_error("eval_qexp: point outside the fundamental domain");
  const UHPoint w{z.re.with_precision(z.precision() + kGuardBits), z.im.with_precision(z.precision() + kGuardBits)};
  ComplexInterval value = horner(f, q_of(w), q_inverse_of(w));
  const Interval bound = tail_const.magnitude();
  return CertifiedValue(value.widened(bound.hi()));
}

CertifiedValue eval_series(SeriesKind kind, const UHPoint& z, const EvalOptions& options) {
  if (options.prec_bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
  if (!in_fundamental_domain(z)) throw std::domain_error("eval_series: point outside the fundamental domain");
  const mpfr_prec_t prec = options.prec_bits + kGuardBits;
  const UHPoint w{z.re.with_precision(prec), z.im.with_precision(prec)};
  const Interval r = exp(-(two_pi(prec) * w.im.with_precision(prec))).magnitude();
  const bool has_pole = kind == SeriesKind::J || kind == SeriesKind::Chi || kind == SeriesKind::Xi;
  std::int64_t order = options.order;
  if (order <= 0) {
    long bits = static_cast<long>(options.prec_bits);
    if (has_pole) bits -= inverse_q_bits(w);
    order = order_for_bits(kind, r, bits);
  }
  QExpansion storage;
  const QExpansion& f = series_for(kind, order, storage);
  const Interval tail = tail_bound(kind, order, r);
  ComplexInterval value = horner(f, q_of(w), q_inverse_of(w));
  return CertifiedValue(value.widened(tail.hi()));
}

CertifiedValue eval_j(const UHPoint& z, const EvalOptions& options) {
  return eval_series(SeriesKind::J, reduce_to_fundamental_domain(z).point, options);
}

CertifiedValue eval_chi(const UHPoint& z, const EvalOptions& options) {
  return eval_series(SeriesKind::Chi, reduce_to_fundamental_domain(z).point, options);
}

CertifiedValue eval_xi(const UHPoint& z, const EvalOptions& options) {
  return eval_series(SeriesKind::Xi, reduce_to_fundamental_domain(z).point, options);
}

namespace {

CertifiedValue chi_star_at_reduced(const UHPoint& w, const EvalOptions& options) {
  const CertifiedValue chi = eval_series(SeriesKind::Chi, w, options);
  const CertifiedValue xi = eval_series(SeriesKind::Xi, w, options);
  const mpfr_prec_t prec = options.prec_bits + kGuardBits;
  const Interval factor = Interval::exact(3, prec) / (Interval::pi(prec) * w.im.with_precision(prec));
  return CertifiedValue(chi.box() - xi.box() * factor);
}

}  // namespace

CertifiedValue eval_chi_star(const UHPoint& z, const EvalOptions& options) {
  return chi_star_at_reduced(reduce_to_fundamental_domain(z).point, options);
}

SpecialPair eval_j_chi_star(const UHPoint& z, const EvalOptions& options) {
  const UHPoint w = reduce_to_fundamental_domain(z).point;
  return {eval_series(SeriesKind::J, w, options), chi_star_at_reduced(w, options)};
}

}  // namespace chistar

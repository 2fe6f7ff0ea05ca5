#include "chistar/heegner.hpp"

#include <cmath>

#include "chistar/cache.hpp"
#include "chistar/rational.hpp"

namespace chistar {

namespace {

// Values of j and chi* at every class, at a fixed working precision.
std::vector<SpecialValue> values_at(long D, mpfr_prec_t prec) {
  std::vector<SpecialValue> out;
  const EvalOptions options{prec, 0};
  for (const auto& form : reduced_forms(D)) {
    UHPoint tau = form.cm_point(prec + 32);
    auto pair = eval_j_chi_star(tau, options);
    out.push_back({form, std::move(tau), std::move(pair.j), std::move(pair.chi_star)});
  }
  return out;
}

bool radius_within(const CertifiedValue& v, long target_bits) {
  BigFloat limit(64);
  mpfr_set_ui_2exp(limit.get(), 1, -target_bits, MPFR_RNDN);
  const BigFloat r = v.radius();
  return mpfr_lessequal_p(r.get(), limit.get());
}

// log2 |1/q| at a point of imaginary part sqrt|D| / (2a).
double point_bits(long D, long a) { return M_PI * std::sqrt(static_cast<double>(-D)) / (static_cast<double>(a) * M_LN2); }

mpfr_prec_t start_precision(long D, PolyKind kind) {
  double bits = 0;
  long h = 0;
  for (const auto& f : reduced_forms(D)) {
    bits += std::max(0.0, point_bits(D, f.a)) + 1.0;
    ++h;
  }
  // Room for the observed denominators of H_chi*, powers of primes dividing D.
  if (kind == PolyKind::ChiStar) bits += 2.0 * static_cast<double>(h - 1) * std::log2(static_cast<double>(-D)) + 32.0;
  return static_cast<mpfr_prec_t>(std::ceil(bits)) + 64;
}

std::optional<QPoly> recognize(const std::vector<ComplexInterval>& enc, PolyKind kind) {
  std::vector<Rational> coeffs;
  for (const auto& c : enc) {
    if (!c.im().contains_zero()) return std::nullopt;
    const long bits = accurate_bits(c.re());
    if (bits < 8) return std::nullopt;
    Integer max_den = 1;
    if (kind == PolyKind::ChiStar) mpz_mul_2exp(max_den.get_mpz_t(), max_den.get_mpz_t(), static_cast<mp_bitcnt_t>(bits / 4));
    auto q = reconstruct_rational(c.re(), max_den);
    if (!q) return std::nullopt;
    coeffs.push_back(*q);
  }
  QPoly poly(std::move(coeffs));
  if (!poly.is_monic()) return std::nullopt;
  return poly;
}

}  // namespace

std::string to_string(PolyKind kind) { return kind == PolyKind::J ? "j" : "chi-star"; }

PolyKind parse_poly_kind(const std::string& text) {
  if (text == "j") return PolyKind::J;
  if (text == "chi-star" || text == "chistar" || text == "chi*") return PolyKind::ChiStar;
  throw std::invalid_argument("unknown class polynomial kind '" + text + "'");
}

std::vector<SpecialValue> special_values_at(long D, mpfr_prec_t prec) {
  if (!is_discriminant(D)) throw std::invalid_argument("invalid discriminant " + std::to_string(D));
  return values_at(D, std::max<mpfr_prec_t>(prec, 64));
}

long magnitude_bits(long D) { return static_cast<long>(std::ceil(point_bits(D, 1))) + 1; }

std::vector<SpecialValue> special_values(long D, const SpecialOptions& options) {
  if (!is_discriminant(D)) throw std::invalid_argument("invalid discriminant " + std::to_string(D));
  mpfr_prec_t prec = options.prec_bits;
  if (prec <= 0) prec = static_cast<mpfr_prec_t>(std::max<long>(0, options.target_bits) + magnitude_bits(D) + 32);
  prec = std::max<mpfr_prec_t>(prec, 64);
  for (int round = 0; round <= options.max_doublings; ++round, prec *= 2) {
    auto values = values_at(D, prec);
    bool ok = true;
    for (const auto& v : values) ok = ok && radius_within(v.j, options.target_bits) && radius_within(v.chi_star, options.target_bits);
    if (ok) return values;
  }
  throw PrecisionError("special values for D = " + std::to_string(D) + " did not reach 2^-" +
                       std::to_string(options.target_bits) + " within the escalation cap");
}

std::vector<ComplexInterval> class_polynomial_enclosure(const std::vector<SpecialValue>& values, PolyKind kind) {
  if (values.empty()) return {};
  const mpfr_prec_t prec = values.front().j.box().precision();
  std::vector<ComplexInterval> poly{ComplexInterval::real(Interval::exact(1, prec))};
  for (const auto& v : values) {
    const ComplexInterval& x = kind == PolyKind::J ? v.j.box() : v.chi_star.box();
    // poly * (X - x)
    std::vector<ComplexInterval> next(poly.size() + 1, ComplexInterval(prec));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * x;
    }
    poly = std::move(next);
  }
  return poly;
}

ClassPolynomial class_polynomial(long D, PolyKind kind, const ClassPolyOptions& options) {
  if (!is_discriminant(D)) throw std::invalid_argument("invalid discriminant " + std::to_string(D));
  if (options.cache != nullptr) {
    if (auto cached = options.cache->load(D, kind)) return {D, kind, std::move(*cached), 0, true};
  }
  mpfr_prec_t prec = options.prec_bits > 0 ? options.prec_bits : start_precision(D, kind);
  for (int round = 0; round <= options.max_doublings; ++round, prec *= 2) {
    auto candidate = recognize(class_polynomial_enclosure(values_at(D, prec), kind), kind);
    if (!candidate) continue;
    auto check = recognize(class_polynomial_enclosure(values_at(D, 2 * prec), kind), kind);
    if (!check || !(*check == *candidate)) continue;
    ClassPolynomial out{D, kind, std::move(*candidate), prec, false};
    if (options.cache != nullptr) options.cache->store(D, kind, out.poly);
    return out;
  }
  throw PrecisionError("class polynomial " + to_string(kind) + " for D = " + std::to_string(D) +
                       " not recognized within the escalation cap");
}

GapReport verify_gap(long D, const SpecialOptions& options) {
  GapReport report;
  report.D = D;
  report.class_number = class_number(D);
  report.applicable = report.class_number >= 2 && -D >= 15;
  if (!report.applicable) return report;
  mpfr_prec_t prec = options.prec_bits > 0 ? options.prec_bits : static_cast<mpfr_prec_t>(magnitude_bits(D) + 96);
  for (int round = 0; round <= options.max_doublings; ++round, prec *= 2) {
    const auto values = values_at(D, prec);
    report.principal_abs = values.front().chi_star.box().abs();
    report.entries.clear();
    bool straddles = false;
    bool all_positive = true;
    const Interval threshold = Interval::exact(kGapThreshold, prec);
    for (std::size_t i = 1; i < values.size(); ++i) {
      Interval abs_value = values[i].chi_star.box().abs();
      Interval margin = report.principal_abs - abs_value - threshold;
      straddles = straddles || margin.contains_zero();
      all_positive = all_positive && margin.is_positive();
      report.entries.push_back({values[i].form, std::move(abs_value), std::move(margin)});
    }
    if (!straddles) {
      report.pass = all_positive;
      report.inconclusive = false;
      return report;
    }
  }
  report.pass = false;
  report.inconclusive = true;
  return report;
}

}  // namespace chistar

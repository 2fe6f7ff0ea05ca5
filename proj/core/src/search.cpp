#include "chistar/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "chistar/cache.hpp"
#include "chistar/json_io.hpp"
#include "chistar/parallel.hpp"
#include "chistar/rational.hpp"

namespace chistar {

namespace {

constexpr mpfr_prec_t kConstPrec = 128;

Interval civ(const Rational& q) { return Interval::of(q, kConstPrec); }
Interval civ(const Integer& n) { return Interval::of(n, kConstPrec); }

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer factorial(int n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

ComplexInterval power(const ComplexInterval& z, int n) {
  ComplexInterval out = ComplexInterval::real(Interval::exact(1, z.precision()));
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

// Bits of |1/q| at the CM point of (D, a).
double point_bits(long D, long a) { return M_PI * std::sqrt(static_cast<double>(-D)) / (static_cast<double>(a) * M_LN2); }

std::optional<Rational> recognize_real(const ComplexInterval& c) {
  if (!c.im().contains_zero()) return std::nullopt;
  const long bits = accurate_bits(c.re());
  if (bits < 8) return std::nullopt;
  Integer max_den = 1;
  mpz_mul_2exp(max_den.get_mpz_t(), max_den.get_mpz_t(), static_cast<mp_bitcnt_t>(bits / 4));
  return reconstruct_rational(c.re(), max_den);
}

// S(X) = sum_i chi*_i prod_{l != i} (X - j_l), whose coefficients are rational.
std::optional<QPoly> recognize_s(const std::vector<SpecialValue>& values) {
  const mpfr_prec_t prec = values.front().j.box().precision();
  const std::size_t h = values.size();
  std::vector<ComplexInterval> total(h, ComplexInterval::real(Interval::exact(0, prec)));
  for (std::size_t i = 0; i < h; ++i) {
    std::vector<ComplexInterval> prod{ComplexInterval::real(Interval::exact(1, prec))};
    for (std::size_t l = 0; l < h; ++l) {
      if (l == i) continue;
      std::vector<ComplexInterval> next(prod.size() + 1, ComplexInterval::real(Interval::exact(0, prec)));
      for (std::size_t m = 0; m < prod.size(); ++m) {
        next[m + 1] += prod[m];
        next[m] -= prod[m] * values[l].j.box();
      }
      prod = std::move(next);
    }
    for (std::size_t m = 0; m < prod.size(); ++m) total[m] += prod[m] * values[i].chi_star.box();
  }
  std::vector<Rational> coeffs;
  for (const auto& c : total) {
    auto q = recognize_real(c);
    if (!q) return std::nullopt;
    coeffs.push_back(*q);
  }
  return QPoly(std::move(coeffs));
}

struct ExactOutcome {
  std::vector<Verdict> verdicts;
  std::vector<std::string> witnesses;
};

ExactOutcome confirm_exactly(const CurvePolynomial& p, long D, const std::vector<SpecialValue>& values,
                             const SearchOptions& options) {
  const std::size_t h = values.size();
  ExactOutcome out{std::vector<Verdict>(h, Verdict::Undetermined), std::vector<std::string>(h)};
  ClassPolyOptions cp;
  cp.cache = options.cache;
  QPoly hj;
  try {
    hj = class_polynomial(D, PolyKind::J, cp).poly;
  } catch (const PrecisionError& e) {
    for (auto& w : out.witnesses) w = e.what();
    return out;
  }
  const auto r = chi_star_in_terms_of_j(D, hj, options.max_doublings + 1);
  if (!r) {
    for (auto& w : out.witnesses) w = "chi* as a polynomial in j not recognized";
    return out;
  }
  for (const auto& v : values) {
    if (!r->eval(v.j.box()).overlaps(v.chi_star.box())) {
      for (auto& w : out.witnesses) w = "recognized R(j) disagrees with certified chi*";
      return out;
    }
  }
  if (h == 1) {
    const Rational j = -hj.coeff(0);
    const Rational c = r->coeff(0);
    const Rational value = p.eval(j, c);
    out.verdicts[0] = value == 0 ? Verdict::ZeroConfirmed : Verdict::Nonzero;
    out.witnesses[0] = "p(" + to_string(j) + ", " + to_string(c) + ") = " + to_string(value) + " at the exact (j, chi*)";
    return out;
  }
  const QPoly reduced = p.substitute_mod(*r, hj);
  const QPoly g = QPoly::gcd(reduced, hj);
  if (g.degree() == 0) {
    std::fill(out.verdicts.begin(), out.verdicts.end(), Verdict::Nonzero);
    std::fill(out.witnesses.begin(), out.witnesses.end(), "gcd(p(X, R(X)), H_j) = 1 with chi* = R(j) mod H_j");
    return out;
  }
  if (g == hj.monic()) {
    std::fill(out.verdicts.begin(), out.verdicts.end(), Verdict::ZeroConfirmed);
    std::fill(out.witnesses.begin(), out.witnesses.end(), "p(X, R(X)) = 0 mod H_j with chi* = R(j) mod H_j");
    return out;
  }
  // A proper factor: the roots of g are the classes where p vanishes.
  std::vector<bool> maybe(h);
  long count = 0;
  for (std::size_t i = 0; i < h; ++i) {
    maybe[i] = g.eval(values[i].j.box()).contains_zero();
    count += maybe[i] ? 1 : 0;
  }
  if (count != g.degree()) {
    for (auto& w : out.witnesses) w = "roots of gcd(p(X, R(X)), H_j) not separated";
    return out;
  }
  for (std::size_t i = 0; i < h; ++i) {
    out.verdicts[i] = maybe[i] ? Verdict::ZeroConfirmed : Verdict::Nonzero;
    out.witnesses[i] = std::string(maybe[i] ? "j is a root of " : "j is not a root of ") + "gcd(p(X, R(X)), H_j) = " + g.to_string();
  }
  return out;
}

std::vector<SearchResult> search_discriminant(const CurvePolynomial& p, long D, const SearchOptions& options) {
  SpecialOptions so;
  so.target_bits = options.target_bits;
  so.max_doublings = options.max_doublings;
  auto values = special_values(D, so);
  std::vector<SearchResult> out;
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < values.size(); ++i) {
    SearchResult r;
    r.D = D;
    r.form = values[i].form;
    r.j = values[i].j;
    r.chi_star = values[i].chi_star;
    r.value = CertifiedValue(p.eval(values[i].j.box(), values[i].chi_star.box()));
    r.precision = values[i].j.box().precision();
    if (r.value.excludes_zero()) {
      r.verdict = Verdict::Nonzero;
      r.witness = "certified enclosure of p(j, chi*) excludes 0";
    } else {
      candidates.push_back(i);
    }
    out.push_back(std::move(r));
  }
  mpfr_prec_t prec = out.empty() ? 64 : out.front().precision;
  for (int round = 0; round < options.max_doublings && !candidates.empty(); ++round) {
    prec *= 2;
    values = special_values_at(D, prec);
    std::vector<std::size_t> still;
    for (auto i : candidates) {
      auto& r = out[i];
      r.j = values[i].j;
      r.chi_star = values[i].chi_star;
      r.value = CertifiedValue(p.eval(values[i].j.box(), values[i].chi_star.box()));
      r.precision = prec;
      if (r.value.excludes_zero()) {
        r.verdict = Verdict::Nonzero;
        r.witness = "certified enclosure of p(j, chi*) excludes 0";
      } else {
        still.push_back(i);
      }
    }
    candidates = std::move(still);
  }
  if (candidates.empty()) return out;
  const ExactOutcome exact = confirm_exactly(p, D, values, options);
  for (auto i : candidates) {
    out[i].verdict = exact.verdicts[i];
    out[i].witness = exact.witnesses[i];
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------ CurvePolynomial

CurvePolynomial::CurvePolynomial(int field_degree, std::vector<CurveTerm> terms) : field_degree_(field_degree) {
  if (field_degree < 1) throw std::invalid_argument("field_degree must be at least 1");
  std::map<std::pair<int, int>, Rational> merged;
  for (auto& t : terms) {
    if (t.i < 0 || t.j < 0) throw std::invalid_argument("negative exponent in curve polynomial");
    merged[{t.i, t.j}] += t.value;
  }
  for (auto& [key, value] : merged) {
    if (value != 0) terms_.push_back({key.first, key.second, value});
  }
}

CurvePolynomial CurvePolynomial::from_json(const nlohmann::json& value) {
  if (!value.is_object() || !value.contains("coeffs") || !value["coeffs"].is_array())
    throw std::invalid_argument("curve polynomial needs a 'coeffs' array");
  const int degree = value.value("field_degree", 1);
  std::vector<CurveTerm> terms;
  for (const auto& t : value["coeffs"]) {
    if (!t.is_object() || !t.contains("i") || !t.contains("j") || !t.contains("value"))
      throw std::invalid_argument("curve term needs i, j and value");
    terms.push_back({t["i"].get<int>(), t["j"].get<int>(), rational_from_json(t["value"])});
  }
  return CurvePolynomial(degree, std::move(terms));
}

nlohmann::json CurvePolynomial::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& t : terms_) coeffs.push_back({{"i", t.i}, {"j", t.j}, {"value", rational_to_json(t.value)}});
  return {{"field_degree", field_degree_}, {"coeffs", coeffs}};
}

int CurvePolynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.i + t.j);
  return d;
}

Rational CurvePolynomial::coeff(int i, int j) const {
  for (const auto& t : terms_) {
    if (t.i == i && t.j == j) return t.value;
  }
  return 0;
}

Integer CurvePolynomial::height() const {
  Integer m = 1;
  for (const auto& t : terms_) {
    m = std::max<Integer>(m, abs(t.value.get_num()));
    m = std::max<Integer>(m, t.value.get_den());
  }
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(field_degree_));
  return out;
}

CurvePolynomial CurvePolynomial::scaled(const Rational& c) const {
  std::vector<CurveTerm> t = terms_;
  for (auto& x : t) x.value *= c;
  return CurvePolynomial(field_degree_, std::move(t));
}

Rational CurvePolynomial::eval(const Rational& x, const Rational& y) const {
  Rational out = 0;
  for (const auto& t : terms_) {
    Rational m = t.value;
    for (int a = 0; a < t.i; ++a) m *= x;
    for (int b = 0; b < t.j; ++b) m *= y;
    out += m;
  }
  return out;
}

ComplexInterval CurvePolynomial::eval(const ComplexInterval& x, const ComplexInterval& y) const {
  const mpfr_prec_t prec = x.precision();
  ComplexInterval out = ComplexInterval::real(Interval::exact(0, prec));
  for (const auto& t : terms_) out += power(x, t.i) * power(y, t.j) * Interval::of(t.value, prec);
  return out;
}

QPoly CurvePolynomial::substitute_mod(const QPoly& r, const QPoly& m) const {
  QPoly out;
  for (const auto& t : terms_) {
    QPoly term = QPoly::constant(t.value);
    for (int a = 0; a < t.i; ++a) term = (term * QPoly::x()) % m;
    for (int b = 0; b < t.j; ++b) term = (term * r) % m;
    out += term;
  }
  return out % m;
}

std::string CurvePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << chistar::to_string(t.value) << ")";
    if (t.i > 0) os << "*X^" << t.i;
    if (t.j > 0) os << "*Y^" << t.j;
  }
  return os.str();
}

// ------------------------------------------------------------ constants

EffectiveConstants derive_c1_c2(const CurvePolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("derive_c1_c2: zero polynomial");
  EffectiveConstants out;
  const int d = p.degree();
  out.degree = d;

  // c(t) = sum_{i+j=d} a_ij (1 - t)^j, coefficient of t^m.
  int top_y = 0;
  std::vector<Rational> c(static_cast<std::size_t>(d + 1), Rational(0));
  for (const auto& t : p.terms()) {
    if (t.i + t.j != d) continue;
    top_y = std::max(top_y, t.j);
    for (int m = 0; m <= t.j; ++m) {
      Rational term = t.value * Rational(binomial(t.j, m));
      c[static_cast<std::size_t>(m)] += (m % 2 == 0) ? term : Rational(-term);
    }
  }
  int k = 0;
  while (c[static_cast<std::size_t>(k)] == 0) ++k;
  out.k = k;
  out.A = c[static_cast<std::size_t>(k)];
  out.leading_term_shifted = k != top_y;
  out.height = p.height();
  out.height_a = std::max(Rational(out.height), Rational(Rational(1) / abs_q(out.A)));

  // c1: |sum_{m>k} c_m t^{m-k}| <= t sum_{m>k} |c_m| for t <= 3/(2 pi) < 1,
  // and |c_m| <= H sum_{top} binom(j, m).
  Integer c1_sum = 0;
  for (const auto& t : p.terms()) {
    if (t.i + t.j != d) continue;
    for (int m = k + 1; m <= t.j; ++m) c1_sum += binomial(t.j, m);
  }
  out.c1 = civ(out.height) * civ(c1_sum);

  // c2 with eps = e^{-4 pi} >= |q|, j = q^{-1}(1 + a), chi* = q^{-1}(1 - t + g),
  // |a| <= 1193 eps, |g| <= W eps, W = 4808 + (3/(2 pi)) 4782.
  const Interval pi = Interval::pi(kConstPrec);
  const Interval one = Interval::exact(1, kConstPrec);
  const Interval eps = exp(-(pi * Interval::exact(4, kConstPrec)));
  const Interval w = Interval::exact(4808, kConstPrec) + Interval::exact(3 * 4782, kConstPrec) / (pi * Interval::exact(2, kConstPrec));
  const Interval ga = one + Interval::exact(1193, kConstPrec) * eps;
  const Interval gw = one + w * eps;
  Interval kappa_sum = Interval::exact(0, kConstPrec);
  for (const auto& t : p.terms()) {
    const Interval grow = pow(ga, static_cast<unsigned long>(t.i)) * pow(gw, static_cast<unsigned long>(t.j));
    if (t.i + t.j == d) {
      kappa_sum += (grow - one) / eps;
    } else {
      kappa_sum += pow(eps, static_cast<unsigned long>(d - t.i - t.j - 1)) * grow;
    }
  }
  out.c2 = civ(out.height) * kappa_sum;

  const Interval ha = civ(out.height_a);
  out.y1 = Interval::exact(6, kConstPrec) * ha * out.c1 / pi;
  out.y2 = Interval::exact(0, kConstPrec);
  if (!out.c2.contains_zero()) {
    const Interval arg = Interval::exact(2, kConstPrec) * pow(pi, static_cast<unsigned long>(k)) * civ(factorial(k)) * ha * out.c2 /
                         pow(Interval::exact(3, kConstPrec), static_cast<unsigned long>(k));
    const Interval y2 = log(arg) / (pi * Interval::exact(2, kConstPrec) - one);
    if (!y2.is_negative()) out.y2 = max(y2, Interval::exact(0, kConstPrec));
  }
  // The tail constants need Im tau >= 2.
  const Interval y = max(max(out.y1, out.y2), Interval::exact(2, kConstPrec));
  const Interval bound = Interval::exact(4, kConstPrec) * sqr(y);
  const Rational up = bound.upper_rational();
  Integer ceil_value;
  mpz_cdiv_q(ceil_value.get_mpz_t(), up.get_num_mpz_t(), up.get_den_mpz_t());
  out.d_max = ceil_value.get_si();

  auto& rep = out.report;
  rep.push_back("deg p = " + std::to_string(d) + ", t = 3/(pi y), leading q^{-d} coefficient c(t) = sum_{i+j=d} a_ij (1-t)^j");
  rep.push_back("k = t-adic valuation of c(t) = " + std::to_string(k) + ", A = " + to_string(out.A));
  if (out.leading_term_shifted)
    rep.push_back("flag: A is not the coefficient of the leading Y term (Y-degree " + std::to_string(top_y) +
                  "); the lowest power of t fixes A and k");
  rep.push_back("H(p) = " + out.height.get_str() + ", H_A = max(H, 1/|A|) = " + to_string(out.height_a));
  rep.push_back("c1 = H sum_{m>k} sum_{i+j=d} binom(j, m) = " + out.c1.to_string(12));
  rep.push_back("c2 = H sum kappa_ij with eps = e^{-4pi}, kappa = ((1+1193eps)^i (1+W eps)^j - 1)/eps on the top degree, "
                "eps^{d-i-j-1} (1+1193eps)^i (1+W eps)^j below; W = 4808 + (3/(2pi)) 4782; c2 = " + out.c2.to_string(12));
  rep.push_back("y1 = 6 H_A c1 / pi = " + out.y1.to_string(12));
  rep.push_back("y2 = log(2 pi^k k! H_A c2 / 3^k) / (2pi - 1) = " + out.y2.to_string(12));
  rep.push_back("D_max = ceil(4 max(y1, y2, 2)^2) = " + std::to_string(out.d_max));
  return out;
}

long discriminant_bound(const CurvePolynomial& p) { return derive_c1_c2(p).d_max; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ZeroConfirmed: return "zero-confirmed";
    case Verdict::Nonzero: return "nonzero";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

std::string to_string(Collinearity c) {
  switch (c) {
    case Collinearity::NotCollinear: return "not-collinear";
    case Collinearity::Collinear: return "collinear";
    case Collinearity::Undetermined: return "undetermined";
  }
  return "?";
}

// ------------------------------------------------------------ search

std::optional<QPoly> chi_star_in_terms_of_j(long D, const QPoly& hj, int max_doublings) {
  const auto forms = reduced_forms(D);
  double bits = 0;
  for (const auto& f : forms) bits += std::max(0.0, point_bits(D, f.a)) + 1.0;
  const double h = static_cast<double>(forms.size());
  bits = 2.0 * bits + 2.0 * (h - 1.0) * std::log2(static_cast<double>(-D)) + 96.0;
  auto prec = static_cast<mpfr_prec_t>(std::ceil(bits));
  const QPoly dh = hj.derivative();
  const auto inv = QPoly::inverse_mod(dh, hj);
  if (!inv) return std::nullopt;
  for (int round = 0; round <= max_doublings; ++round, prec *= 2) {
    auto s = recognize_s(special_values_at(D, prec));
    if (!s) continue;
    auto check = recognize_s(special_values_at(D, 2 * prec));
    if (!check || !(*check == *s)) continue;
    return (*s * *inv) % hj;
  }
  return std::nullopt;
}

std::vector<SearchResult> ao_search(const CurvePolynomial& p, const SearchOptions& options) {
  if (options.d_max < 3) throw std::invalid_argument("ao_search: d_max must be at least 3");
  const auto discs = discriminants_up_to(options.d_max);
  auto per_disc = parallel_map(discs.size(), options.workers,
                               [&](std::size_t i) { return search_discriminant(p, discs[i], options); });
  std::vector<SearchResult> out;
  for (auto& chunk : per_disc) {
    for (auto& r : chunk) out.push_back(std::move(r));
  }
  return out;
}

std::vector<CMPoint> cm_points(long d_max, const SearchOptions& options) {
  const auto discs = discriminants_up_to(d_max);
  auto per_disc = parallel_map(discs.size(), options.workers, [&](std::size_t i) {
    const long D = discs[i];
    SpecialOptions so;
    so.target_bits = options.target_bits;
    so.max_doublings = options.max_doublings;
    std::vector<CMPoint> pts;
    for (auto& v : special_values(D, so)) pts.push_back({D, v.form, v.j, v.chi_star, std::nullopt, std::nullopt});
    if (pts.size() == 1) {
      ClassPolyOptions cp;
      cp.cache = options.cache;
      pts[0].exact_j = -class_polynomial(D, PolyKind::J, cp).poly.coeff(0);
      pts[0].exact_chi_star = -class_polynomial(D, PolyKind::ChiStar, cp).poly.coeff(0);
    }
    return pts;
  });
  std::vector<CMPoint> out;
  for (auto& chunk : per_disc) {
    for (auto& p : chunk) out.push_back(std::move(p));
  }
  return out;
}

CollinearTriple triple_determinant(const std::vector<CMPoint>& points, std::array<std::size_t, 3> idx) {
  const auto& a = points.at(idx[0]);
  const auto& b = points.at(idx[1]);
  const auto& c = points.at(idx[2]);
  CollinearTriple t;
  t.points = idx;
  const ComplexInterval det = (b.j.box() - a.j.box()) * (c.chi_star.box() - a.chi_star.box()) -
                              (c.j.box() - a.j.box()) * (b.chi_star.box() - a.chi_star.box());
  t.det = CertifiedValue(det);
  if (a.exact_j && b.exact_j && c.exact_j) {
    const Rational e = (*b.exact_j - *a.exact_j) * (*c.exact_chi_star - *a.exact_chi_star) -
                       (*c.exact_j - *a.exact_j) * (*b.exact_chi_star - *a.exact_chi_star);
    t.exact_det = e;
    t.verdict = e == 0 ? Collinearity::Collinear : Collinearity::NotCollinear;
  } else {
    t.verdict = t.det.excludes_zero() ? Collinearity::NotCollinear : Collinearity::Undetermined;
  }
  return t;
}

CollinearReport collinear_search(const SearchOptions& options) {
  if (options.d_max < 3) throw std::invalid_argument("collinear_search: d_max must be at least 3");
  CollinearReport report;
  report.d_max = options.d_max;
  report.points = cm_points(options.d_max, options);
  const auto& pts = report.points;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        ++report.triples_tested;
        CollinearTriple t = triple_determinant(pts, {i, j, k});
        if (t.verdict == Collinearity::Undetermined) {
          // Escalate: re-evaluate the three points at higher precision.
          mpfr_prec_t prec = pts[i].j.box().precision();
          for (int round = 0; round < options.max_doublings && t.verdict == Collinearity::Undetermined; ++round) {
            prec *= 2;
            std::vector<CMPoint> local;
            for (auto idx : {i, j, k}) {
              CMPoint p = pts[idx];
              for (auto& v : special_values_at(p.D, prec)) {
                if (v.form == p.form) {
                  p.j = v.j;
                  p.chi_star = v.chi_star;
                }
              }
              local.push_back(std::move(p));
            }
            CollinearTriple again = triple_determinant(local, {0, 1, 2});
            again.points = {i, j, k};
            t = std::move(again);
          }
        }
        if (t.verdict != Collinearity::NotCollinear) report.hits.push_back(std::move(t));
      }
    }
  }
  return report;
}

}  // namespace chistar

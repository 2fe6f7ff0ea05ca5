#include "chistar/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "chistar/evaluator.hpp"
#include "chistar/heegner.hpp"
#include "chistar/qseries.hpp"
#include "chistar/random.hpp"
#include "chistar/rational.hpp"

namespace chistar {

namespace {

constexpr mpfr_prec_t kPrec = 256;

Rational dec(const std::string& text) {
  // Exact value of a decimal literal such as "0.0055".
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  Integer den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  Rational out(Integer(digits, 10), den);
  out.canonicalize();
  return out;
}

Interval iv(const Rational& q) { return Interval::of(q, kPrec); }
Interval iv(long n) { return Interval::exact(n, kPrec); }
Interval idec(const std::string& text) { return iv(dec(text)); }

Interval pi() { return Interval::pi(kPrec); }
Interval one() { return iv(1); }

// e^{-2 pi y} at the edge of each regime.
Interval q_edge(Regime regime) {
  switch (regime) {
    case Regime::ImAtLeast2: return exp(-(pi().mul_si(4)));
    case Regime::ImAtLeast1_5: return exp(-(pi().mul_si(3)));
    case Regime::LowStrip:
    case Regime::FundamentalDomain: return exp(-(pi() * sqrt(iv(3))));
  }
  throw std::logic_error("unknown regime");
}

bool upper_holds(const Interval& lhs, const Rational& rhs, bool strict) {
  const Interval r = iv(rhs);
  return strict ? lhs.certainly_less(r) : lhs.certainly_less_equal(r);
}

bool lower_holds(const Interval& lhs, const Rational& rhs, bool strict) {
  const Interval r = iv(rhs);
  return strict ? r.certainly_less(lhs) : r.certainly_less_equal(lhs);
}

class Chain {
 public:
  // Claims lhs <= rhs; carries rhs forward when it holds and lhs otherwise.
  Interval upper(std::string description, Interval lhs, const Rational& rhs, bool strict = false) {
    const bool holds = upper_holds(lhs, rhs, strict);
    steps_.push_back({std::move(description), lhs, rhs, false, strict, holds, false});
    return holds ? iv(rhs) : lhs;
  }

  // Exact rational step; no rounding, so equality is decidable.
  Rational upper(std::string description, const Rational& lhs, const Rational& rhs, bool strict = false) {
    const bool holds = strict ? lhs < rhs : lhs <= rhs;
    steps_.push_back({std::move(description), iv(lhs), rhs, false, strict, holds, false});
    return holds ? rhs : lhs;
  }

  // Claims lhs >= rhs; carries rhs forward when it holds and lhs otherwise.
  Interval lower(std::string description, Interval lhs, const Rational& rhs, bool strict = false) {
    const bool holds = lower_holds(lhs, rhs, strict);
    steps_.push_back({std::move(description), lhs, rhs, true, strict, holds, false});
    return holds ? iv(rhs) : lhs;
  }

  // A displayed step that is expected to be false; marked as an erratum when it is.
  bool displayed(std::string description, Interval lhs, const Rational& rhs, bool lower_claim, bool strict = false) {
    const bool holds = lower_claim ? lower_holds(lhs, rhs, strict) : upper_holds(lhs, rhs, strict);
    steps_.push_back({std::move(description), lhs, rhs, lower_claim, strict, holds, !holds});
    return holds;
  }

  void append(const std::vector<BoundStep>& steps) { steps_.insert(steps_.end(), steps.begin(), steps.end()); }

  BoundCertificate finish(std::string name, Regime regime, const Rational& claimed, Interval recomputed,
                          bool lower_claim = false, bool strict = false) {
    BoundCertificate cert;
    cert.name = std::move(name);
    cert.regime = regime;
    cert.claimed = claimed;
    cert.lower = lower_claim;
    cert.strict = strict;
    cert.pass = lower_claim ? lower_holds(recomputed, claimed, strict) : upper_holds(recomputed, claimed, strict);
    cert.recomputed = std::move(recomputed);
    cert.steps = std::move(steps_);
    return cert;
  }

 private:
  std::vector<BoundStep> steps_;
};

// Value to use downstream: the claimed constant when certified, otherwise the
// honest recomputed bound.
Interval effective(const BoundCertificate& cert) { return cert.pass ? iv(cert.claimed) : cert.recomputed; }

Interval loglog(long n) { return log(log(iv(n))); }

// sum_{n >= 4} n^k x^n from the closed forms of sum_{n >= 1} n^k x^n.
Interval power_sum_from4(unsigned k, const Interval& x) {
  const Interval o = one();
  const Interval d = o - x;
  Interval full;
  switch (k) {
    case 1: full = x / pow(d, 2); break;
    case 3: full = x * (o + iv(4) * x + pow(x, 2)) / pow(d, 4); break;
    case 5:
      full = x * (o + iv(26) * x + iv(66) * pow(x, 2) + iv(26) * pow(x, 3) + pow(x, 4)) / pow(d, 6);
      break;
    default: throw std::logic_error("power_sum_from4: unsupported k");
  }
  for (long n = 1; n <= 3; ++n) full -= pow(iv(n), k) * pow(x, static_cast<unsigned long>(n));
  return full;
}

std::vector<BoundStep> loglog_steps() {
  Chain chain;
  Interval worst = iv(0);
  for (long n = 4; n <= 38; ++n) worst = max(worst, loglog(n) / pow(idec("1.1"), static_cast<unsigned long>(n)));
  chain.upper("max over 4 <= n <= 38 of loglog(n) / 1.1^n (so 1.1^n > loglog n there)", worst, 1, true);
  chain.upper("39 / 1.1^39; with 1.1^{n+1} > 1.1 n >= n + 1 this gives n < 1.1^n, hence loglog n < 1.1^n, for n >= 39",
              iv(39) / pow(idec("1.1"), 39), 1, true);
  return chain.finish("", Regime::FundamentalDomain, 0, iv(0)).steps;
}

std::vector<BoundStep> robin_reduction_steps() {
  // Robin: sigma(n) < e^gamma n L + 0.6483 n / L with L = loglog n (n >= 3).
  // sigma(n) < c n L follows once (c - e^gamma) L^2 >= 0.6483, and L grows.
  Chain chain;
  const Interval eg = exp(Interval::euler_gamma(kPrec));
  chain.lower("(8 - e^gamma) (loglog 4)^2 >= 0.6483, so sigma(n) < 8 n loglog n for n >= 4",
              (iv(8) - eg) * sqr(loglog(4)), dec("0.6483"));
  chain.lower("(4 - e^gamma) (loglog 6)^2 >= 0.6483, so sigma(n) < 4 n loglog n for n >= 6",
              (iv(4) - eg) * sqr(loglog(6)), dec("0.6483"));
  chain.upper("sigma_k(n) <= sigma(n)^k gives sigma_3 < 64 n^3 L^3 and sigma_5 < 1024 n^5 L^5 for n >= 6 (n = 4, 5 checked directly)",
              iv(0), 0);
  return chain.finish("", Regime::FundamentalDomain, 0, iv(0)).steps;
}

struct EisensteinChain {
  std::string name;
  int weight;
  long factor;     // |constant| in front of the divisor sums
  long robin;      // C with sigma_{w-1}(n) < C n^{w-1} (loglog n)^{w-1}
  const char* second;  // displayed bound on sigma(2) * 0.005
  const char* third;   // displayed bound on sigma(3) * 0.005^2
  const char* head;    // displayed 1 + second + third
  const char* ratio;   // displayed 1.1^{w-1} * 0.005
  const char* total;   // displayed bracket
  long claimed;
};

BoundCertificate eisenstein_certificate(const EisensteinChain& params) {
  Chain chain;
  const unsigned k = static_cast<unsigned>(params.weight - 1);
  const Rational q = dec("0.005");
  chain.upper("|q| <= e^{-pi sqrt 3}", q_edge(Regime::FundamentalDomain), q, true);
  const std::string ks = std::to_string(k);
  const Rational t2 = chain.upper("sigma_" + ks + "(2) * 0.005", Rational(sigma(k, 2)) * q, dec(params.second));
  const Rational t3 = chain.upper("sigma_" + ks + "(3) * 0.005^2", Rational(sigma(k, 3)) * q * q, dec(params.third));
  const Rational head = chain.upper(std::string("1 + ") + params.second + " + " + params.third, 1 + t2 + t3, dec(params.head));
  chain.append(robin_reduction_steps());
  chain.append(loglog_steps());
  Rational ratio = q;
  for (unsigned i = 0; i < k; ++i) ratio *= dec("1.1");
  const Rational x = chain.upper("1.1^" + ks + " * 0.005", ratio, dec(params.ratio));
  // n >= 4 terms: sigma(n) |q|^{n-1} < 200 C n^k (1.1^k 0.005)^n.
  const Interval tail = iv(200 * params.robin) * power_sum_from4(k, iv(x));
  const Interval bracket = chain.upper(std::string(params.head) + " + " + std::to_string(200 * params.robin) + " sum_{n>=4} n^" +
                                           ks + " " + params.ratio + "^n",
                                       iv(head) + tail, dec(params.total));
  const Interval value = iv(params.factor) * bracket;
  chain.upper(std::to_string(params.factor) + " x " + params.total, value, params.claimed, true);
  return chain.finish(params.name, Regime::FundamentalDomain, params.claimed, value, false, true);
}

const std::vector<BoundCertificate>& eisenstein_cached() {
  static const std::vector<BoundCertificate> certs = [] {
    return std::vector<BoundCertificate>{
        eisenstein_certificate({"E2-tail", 2, 24, 8, "0.015", "0.0001", "1.016", "0.0055", "1.017", 25}),
        eisenstein_certificate({"E4-tail", 4, 240, 64, "0.045", "0.001", "1.046", "0.0067", "1.048", 252}),
        eisenstein_certificate({"E6-tail", 6, 504, 1024, "0.165", "0.007", "1.172", "0.0081", "2.172", 1095}),
    };
  }();
  return certs;
}

Interval e2c() { return effective(eisenstein_cached()[0]); }
Interval e4c() { return effective(eisenstein_cached()[1]); }
Interval e6c() { return effective(eisenstein_cached()[2]); }

}  // namespace

bool BoundCertificate::has_errata() const {
  return std::any_of(steps.begin(), steps.end(), [](const BoundStep& s) { return s.erratum; });
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::ImAtLeast2: return "im>=2";
    case Regime::ImAtLeast1_5: return "im>=1.5";
    case Regime::LowStrip: return "low-strip";
    case Regime::FundamentalDomain: return "F";
  }
  return "?";
}

Regime parse_regime(const std::string& text) {
  if (text == "im>=2") return Regime::ImAtLeast2;
  if (text == "im>=1.5") return Regime::ImAtLeast1_5;
  if (text == "low-strip") return Regime::LowStrip;
  if (text == "F") return Regime::FundamentalDomain;
  throw std::invalid_argument("unknown regime '" + text + "'");
}

RobinReport robin_checks(std::uint64_t N) {
  if (N < 6) throw std::invalid_argument("robin_checks: N must be at least 6");
  RobinReport report;
  report.limit = N;
  const auto s1 = sigma_table(1, N + 1);
  const auto s3 = sigma_table(3, N + 1);
  const auto s5 = sigma_table(5, N + 1);
  for (std::uint64_t n = 4; n <= N; ++n) {
    const Interval L = loglog(static_cast<long>(n));
    const Interval nn = iv(static_cast<long>(n));
    auto check = [&](const Integer& lhs, const Interval& rhs, const std::string& what) {
      ++report.checked;
      if (!Interval::of(lhs, kPrec).certainly_less(rhs)) report.failures.push_back(what + " fails at n = " + std::to_string(n));
    };
    check(s1[n], iv(8) * nn * L, "sigma(n) < 8 n loglog n");
    if (n >= 6) check(s1[n], iv(4) * nn * L, "sigma(n) < 4 n loglog n");
    check(s3[n], iv(64) * pow(nn * L, 3), "sigma_3(n) < 64 n^3 (loglog n)^3");
    check(s5[n], iv(1024) * pow(nn * L, 5), "sigma_5(n) < 1024 n^5 (loglog n)^5");
  }
  report.reduction = robin_reduction_steps();
  return report;
}

BoundCertificate q_bound_certificate() {
  Chain chain;
  const Interval q = q_edge(Regime::FundamentalDomain);
  const Interval v = chain.upper("e^{-pi sqrt 3}", q, dec("0.005"), true);
  (void)v;
  return chain.finish("q-bound", Regime::FundamentalDomain, dec("0.005"), q, false, true);
}

std::vector<BoundCertificate> eisenstein_tail_constants() { return eisenstein_cached(); }

BoundCertificate e4_cubed_bound() {
  Chain chain;
  const Interval q = idec("0.005");
  const Interval e = e4c();
  const Interval t1 = chain.upper("3 |(E4-1)/q|", iv(3) * e, 756);
  const Interval t2 = chain.upper("3 |q| |(E4-1)/q|^2", iv(3) * q * sqr(e), 953);
  const Interval t3 = chain.upper("|q|^2 |(E4-1)/q|^3", sqr(q) * pow(e, 3), 401);
  chain.upper("756 + 953 + 401", t1 + t2 + t3, 2110);
  // The terms are strict bounds, so the honest total is the unrounded sum.
  const Interval sum = iv(3) * e + iv(3) * q * sqr(e) + sqr(q) * pow(e, 3);
  chain.upper("3 e + 3 |q| e^2 + |q|^2 e^3 with e = 252", sum, 2110, true);
  return chain.finish("E4-cubed", Regime::FundamentalDomain, 2110, sum, false, true);
}

BoundCertificate jq_bound() {
  Chain chain;
  const Interval small = chain.upper("1193 |q| for Im >= 2 (|1 - jq| < 1193 |q| from |j-hat| <= 1193)",
                                     iv(1193) * q_edge(Regime::ImAtLeast2), dec("0.01"));
  const Interval inv = chain.upper("(1 - 0.01)^{-1}", one() / (one() - small), dec("1.011"), true);
  (void)inv;
  return chain.finish("jq-reciprocal", Regime::ImAtLeast2, dec("1.011"), one() / (one() - small), false, true);
}

BoundCertificate eta_reciprocal_bound() {
  Chain chain;
  Interval head = one();
  const Interval x = idec("0.005");
  for (unsigned long n = 1; n <= 100; ++n) head *= one() - pow(x, n);
  const Interval h = chain.lower("prod_{n=1}^{100} (1 - 0.005^n)", head, dec("0.994"));
  chain.upper("101^2 * 0.005^101 (so 0.005^n <= n^{-2} for n >= 101; the ratio only shrinks)",
              iv(101 * 101) * pow(x, 101), 1);
  const Interval tail = iv(Rational(100, 101));
  chain.displayed("prod_{n>=101} (1 - n^{-2}) = 100/101 telescopes; displayed lower bound 101/102", tail,
                  Rational(101, 102), true);
  chain.upper("(1 / (0.994 x 101/102))^24 as displayed", pow(one() / (iv(dec("0.994")) * iv(Rational(101, 102))), 24),
              dec("1.5"), true);
  const Interval value = pow(one() / (h * tail), 24);
  chain.upper("(1 / (0.994 x 100/101))^24 with the telescoped product", value, dec("1.5"), true);
  return chain.finish("eta-reciprocal", Regime::LowStrip, dec("1.5"), value, false, true);
}

BoundCertificate delta_bound(Regime regime) {
  Chain chain;
  switch (regime) {
    case Regime::ImAtLeast2: {
      const BoundCertificate jq = jq_bound();
      const BoundCertificate e4 = e4_cubed_bound();
      const Interval value = chain.upper("1.011 x (2110 + 1193)", effective(jq) * (effective(e4) + iv(1193)), 3340, true);
      (void)value;
      return chain.finish("delta", regime, 3340, effective(jq) * (effective(e4) + iv(1193)), false, true);
    }
    case Regime::ImAtLeast1_5: {
      const BoundCertificate e4 = e4_cubed_bound();
      const Interval small = chain.upper("1193 |q| for Im >= 1.5", iv(1193) * q_edge(Regime::ImAtLeast1_5), dec("0.1"));
      const Interval pre = chain.upper("(1 - 0.1)^{-1}", one() / (one() - small), dec("1.12"), true);
      const Interval value = pre * (effective(e4) + iv(1193));
      chain.upper("1.12 x (2110 + 1193)", value, 3700, true);
      return chain.finish("delta", regime, 3700, value, false, true);
    }
    case Regime::LowStrip:
    case Regime::FundamentalDomain: {
      const Interval qinv = chain.upper("|q^{-1}| <= e^{3 pi} for Im < 1.5", exp(pi().mul_si(3)), 12392);
      chain.upper("|q^{-1} - 1| <= 12392 + 1", qinv + one(), 12393);
      // At tau = (1 + i sqrt 3)/2, q = -e^{-pi sqrt 3} =: -r and the product is
      // (1 + r)^23 prod_{n>=2} (1 - (-r)^n)^24, which exceeds 0.9.
      const Interval r = q_edge(Regime::FundamentalDomain);
      const Interval geo = sqr(r) / (one() - r);
      const Interval lo = pow(one() + r, 23) * pow(one() - geo, 24);
      const Interval hi = pow(one() + r, 23) * pow(one() + geo, 24);
      chain.displayed("|(1 - q)^23 prod_{n>=2} (1 - q^n)^24| at tau = (1 + i sqrt 3)/2, displayed as <= 0.9",
                      Interval::hull(lo, hi), dec("0.9"), false);
      chain.upper("|12393 x 0.9| + 12392 as displayed", iv(12393) * idec("0.9") + iv(12392), 23546, true);
      // Valid replacement: (Delta - q)/q^2 = (P - 1)/q with P = prod (1 - q^n)^24 holomorphic,
      // |log P| <= 24 sum |q|^n / (1 - |q|^n) <= 24 r / (1 - r)^2 on |q| = r, so by the
      // maximum principle |(P - 1)/q| <= (exp(24 r / (1 - r)^2) - 1) / r for |q| <= r = 0.005.
      const Interval rr = idec("0.005");
      const Interval value = (exp(iv(24) * rr / sqr(one() - rr)) - one()) / rr;
      chain.upper("(exp(24 r/(1-r)^2) - 1)/r at r = 0.005 bounds |(P - 1)/q| on |q| <= 0.005", value, 23546, true);
      return chain.finish("delta", regime, 23546, value, false, true);
    }
  }
  throw std::logic_error("unknown regime");
}

BoundCertificate chi_prefactor_bound(Regime regime) {
  if (regime != Regime::ImAtLeast2 && regime != Regime::ImAtLeast1_5)
    throw std::invalid_argument("chi_prefactor_bound: only Im >= 2 and Im >= 1.5 use this prefactor");
  const BoundCertificate d = delta_bound(regime);
  const Rational claimed = regime == Regime::ImAtLeast2 ? dec("1.02") : dec("1.43");
  Chain chain;
  const Interval value = one() / (one() - q_edge(regime) * effective(d));
  chain.upper("1/(1 - |q| x " + to_string(d.claimed) + ")", value, claimed);
  return chain.finish("chi-prefactor", regime, claimed, value);
}

namespace {

std::vector<BoundCertificate> chi_xi_single(Regime regime) {
  const BoundCertificate d = delta_bound(regime);
  const Interval dv = effective(d);
  const Interval a = e2c(), b = e4c(), c = e6c();
  Interval q;
  Interval pre_sharp;
  Rational pre_displayed;
  std::vector<Rational> shown;
  long chi_claim = 0, xi_claim = 0;
  Chain base;
  switch (regime) {
    case Regime::ImAtLeast2:
      q = q_edge(regime);
      pre_displayed = dec("1.02");
      shown = {dec("0.1"), dec("0.1"), dec("1"), dec("0.1")};
      chi_claim = 4808;
      xi_claim = 4782;
      break;
    case Regime::ImAtLeast1_5:
      q = q_edge(regime);
      pre_displayed = dec("1.43");
      shown = {1, 3, 28, 1};
      chi_claim = 7299;
      xi_claim = 7258;
      break;
    default:
      q = idec("0.005");
      pre_displayed = dec("1.5");
      shown = {32, 137, 1380, 173};
      chi_claim = 39960;
      xi_claim = 39032;
      break;
  }
  Interval pre;
  if (regime == Regime::LowStrip || regime == Regime::FundamentalDomain) {
    const BoundCertificate eta = eta_reciprocal_bound();
    base.append(eta.steps);
    pre_sharp = eta.recomputed;
    pre = effective(eta);
  } else {
    pre_sharp = one() / (one() - q * dv);
    pre = base.upper("|1/(1 + q (Delta - q)/q^2)| <= 1/(1 - |q| x " + to_string(d.claimed) + ")", pre_sharp, pre_displayed);
  }
  const Interval ab = base.upper("|q| |E2-1|/|q| |E4-1|/|q|", q * a * b, shown[0]);
  const Interval ac = base.upper("|q| |E2-1|/|q| |E6-1|/|q|", q * a * c, shown[1]);
  const Interval bc = base.upper("|q| |E4-1|/|q| |E6-1|/|q|", q * b * c, shown[2]);
  const Interval abc = base.upper("|q|^2 |E2-1|/|q| |E4-1|/|q| |E6-1|/|q|", sqr(q) * a * b * c, shown[3]);

  const Interval chi_sum = dv + a + b + c + ab + ac + bc + abc;
  const Interval xi_sum = dv + b + c + bc;
  const bool strict_chi = regime != Regime::LowStrip && regime != Regime::FundamentalDomain;

  std::vector<BoundCertificate> out;
  for (int which = 0; which < 2; ++which) {
    Chain chain = base;
    const Interval& sum = which == 0 ? chi_sum : xi_sum;
    const long claim = which == 0 ? chi_claim : xi_claim;
    const bool strict = which == 0 ? strict_chi : true;
    const std::string label = std::string(which == 0 ? "chi" : "xi") + "-hat: " + to_string(pre_displayed) + " x bracket";
    const bool ok = chain.displayed(label + " as displayed", iv(pre_displayed) * sum, claim, false, strict);
    Interval value = iv(pre_displayed) * sum;
    if (!ok) {
      value = pre_sharp * sum;
      chain.upper(std::string(which == 0 ? "chi" : "xi") + "-hat with the unrounded prefactor", value, claim, strict);
    }
    out.push_back(chain.finish(which == 0 ? "chi-hat" : "xi-hat", regime, claim, value, false, strict));
  }
  return out;
}

}  // namespace

std::vector<BoundCertificate> chi_xi_tail_bounds(Regime regime) {
  if (regime != Regime::FundamentalDomain) return chi_xi_single(regime);
  // All of F: Im >= 1.5 is covered by the 7299/7258 chain, the rest by the low strip.
  auto strip = chi_xi_single(Regime::LowStrip);
  const auto upper = chi_xi_single(Regime::ImAtLeast1_5);
  for (std::size_t i = 0; i < strip.size(); ++i) {
    Chain chain;
    chain.append(strip[i].steps);
    chain.upper("Im >= 1.5 constant " + to_string(upper[i].claimed) + " below the low-strip constant", effective(upper[i]),
                strip[i].claimed);
    const Interval value = max(strip[i].recomputed, upper[i].recomputed);
    strip[i] = chain.finish(strip[i].name, Regime::FundamentalDomain, strip[i].claimed, value, false, strip[i].strict);
  }
  return strip;
}

BoundCertificate gap_lemma_constants() {
  Chain chain;
  const Interval s15 = sqrt(iv(15));
  const Interval t15 = iv(6) / (pi() * s15);
  chain.lower("1 - 6/(pi sqrt 15)", one() - t15, dec("0.5"), true);
  chain.upper("4808 + 6/(pi sqrt 15) x 4782", iv(4808) + t15 * iv(4782), 7167);
  chain.displayed("Im tau' = sqrt(15)/2 reaches the Im >= 2 regime of the 4808/4782 bounds", s15 / iv(2), 2, true);
  chain.lower("Im tau' = sqrt(16)/2 for |D| >= 16 (so the lemma's route is valid there; |D| = 15 is checked directly)",
              sqrt(iv(16)) / iv(2), 2);
  const Interval t3 = iv(6) / (pi() * sqrt(iv(3)));
  chain.upper("|1 - 6/(pi sqrt 3)|", (one() - t3).magnitude(), 1, true);
  chain.upper("6/(pi sqrt 3) x 39032", t3 * iv(39032), 43039);
  chain.upper("39960 + 43039", iv(39960 + 43039), 82999);
  chain.upper("82999 + 7167", iv(82999 + 7167), 90166);
  const Interval e = exp(pi() * s15);
  const Interval value = e * idec("0.5") - exp(pi() * s15 / iv(2)) - iv(90166);
  chain.lower("0.5 e^{pi sqrt 15} - e^{pi sqrt 15 / 2} - 90166", value, Rational(kGapThreshold), true);
  return chain.finish("gap-lemma", Regime::FundamentalDomain, Rational(kGapThreshold), value, true, true);
}

std::vector<BoundCertificate> all_certificates() {
  std::vector<BoundCertificate> out;
  out.push_back(q_bound_certificate());
  for (auto& c : eisenstein_tail_constants()) out.push_back(c);
  out.push_back(e4_cubed_bound());
  out.push_back(jq_bound());
  out.push_back(delta_bound(Regime::ImAtLeast2));
  out.push_back(delta_bound(Regime::ImAtLeast1_5));
  out.push_back(delta_bound(Regime::LowStrip));
  out.push_back(eta_reciprocal_bound());
  out.push_back(chi_prefactor_bound(Regime::ImAtLeast2));
  out.push_back(chi_prefactor_bound(Regime::ImAtLeast1_5));
  for (auto r : {Regime::ImAtLeast2, Regime::ImAtLeast1_5, Regime::LowStrip}) {
    for (auto& c : chi_xi_tail_bounds(r)) out.push_back(c);
  }
  out.push_back(gap_lemma_constants());
  return out;
}

SampleReport sample_empirical(Regime regime, std::uint64_t count, std::uint64_t seed) {
  SampleReport report;
  report.regime = regime;
  report.count = count;
  switch (regime) {
    case Regime::ImAtLeast2: report.j_bound = 1193; report.chi_bound = 4808; report.xi_bound = 4782; break;
    case Regime::ImAtLeast1_5: report.j_bound = 2079; report.chi_bound = 7299; report.xi_bound = 7258; break;
    default: report.j_bound = 2079; report.chi_bound = 39960; report.xi_bound = 39032; break;
  }
  DetRng rng(seed);
  const double ymin = regime == Regime::ImAtLeast2 ? 2.0 : regime == Regime::ImAtLeast1_5 ? 1.5 : 0.8660254037844386;
  const double ymax = regime == Regime::ImAtLeast2 ? 4.0 : regime == Regime::ImAtLeast1_5 ? 3.0 : regime == Regime::LowStrip ? 1.5 : 3.0;
  const EvalOptions options{96, 0};
  for (std::uint64_t i = 0; i < count;) {
    const double x = rng.uniform() - 0.5;
    const double y = ymin + (ymax - ymin) * rng.uniform();
    if (x * x + y * y < 1.0 || y < ymin) continue;
    ++i;
    const UHPoint z{Interval::of(Rational(x), 128), Interval::of(Rational(y), 128)};
    const ComplexInterval qinv = q_inverse_of(z);
    auto hat = [&](SeriesKind kind) { return (eval_series(kind, z, options).box() - qinv).abs().upper(); };
    report.max_j_hat = std::max(report.max_j_hat, hat(SeriesKind::J));
    report.max_chi_hat = std::max(report.max_chi_hat, hat(SeriesKind::Chi));
    report.max_xi_hat = std::max(report.max_xi_hat, hat(SeriesKind::Xi));
  }
  report.pass = report.max_j_hat <= report.j_bound && report.max_chi_hat <= report.chi_bound &&
                report.max_xi_hat <= report.xi_bound;
  return report;
}

}  // namespace chistar

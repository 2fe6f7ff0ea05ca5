#include "chistar/tails.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "chistar/qseries.hpp"

namespace chistar {

namespace {

constexpr mpfr_prec_t kPrec = 128;
// Terms summed exactly before switching to closed-form tails.
constexpr std::uint64_t kHead = 200;

Interval radius_interval() { return Interval::decimal("0.25", kPrec); }

// Upper bound of sum_{n >= K} n^k x^n for 0 < x, using n^k x^n decreasing in
// ratio by at most x (1 + 1/K)^k.
Interval power_sum_tail(unsigned k, std::uint64_t K, const Interval& x) {
  const Interval Kf = Interval::exact(static_cast<long>(K), kPrec);
  const Interval one = Interval::exact(1, kPrec);
  const Interval ratio = x * pow(one + one / Kf, k);
  if (!ratio.certainly_less(one)) throw std::logic_error("power_sum_tail: ratio not below 1");
  return pow(Kf, k) * pow(x, K) / (one - ratio);
}

// 1 + |c| sum_{n >= 1} sigma_{k-1}(n) R^n.
Interval eisenstein_majorant(int weight, long c) {
  const Interval R = radius_interval();
  const auto sig = sigma_table(static_cast<unsigned>(weight - 1), kHead);
  Interval sum(kPrec);
  Interval power = R;
  for (std::uint64_t n = 1; n < kHead; ++n) {
    sum += Interval::of(sig[n], kPrec) * power;
    power *= R;
  }
  // sigma_{k-1}(n) <= n^k.
  sum += power_sum_tail(static_cast<unsigned>(weight), kHead, R);
  return Interval::exact(1, kPrec) + sum.mul_si(std::labs(c));
}

// prod_{n >= 1} (1 - R^n)^{-24}.
Interval inverse_eta_majorant() {
  const Interval R = radius_interval();
  const Interval one = Interval::exact(1, kPrec);
  Interval prod = one;
  Interval power = R;
  for (std::uint64_t n = 1; n < kHead; ++n) {
    prod *= one - power;
    power *= R;
  }
  // -log(1 - x) <= x / (1 - x); sum over n >= K is <= R^K / ((1 - R)(1 - R^K)).
  const Interval tail = power / ((one - R) * (one - power));
  Interval inv = pow(one / prod, 24);
  return inv * exp(Interval::exact(24, kPrec) * tail);
}

// prod_{n >= 1} (1 + R^n)^{24}.
Interval eta_majorant() {
  const Interval R = radius_interval();
  const Interval one = Interval::exact(1, kPrec);
  Interval prod = one;
  Interval power = R;
  for (std::uint64_t n = 1; n < kHead; ++n) {
    prod *= one + power;
    power *= R;
  }
  // log(1 + x) <= x.
  const Interval tail = power / (one - R);
  return pow(prod, 24) * exp(Interval::exact(24, kPrec) * tail);
}

Interval compute_majorant(SeriesKind kind) {
  const Interval inv_r = Interval::exact(4, kPrec);
  const Interval e2 = eisenstein_majorant(2, -24);
  const Interval e4 = eisenstein_majorant(4, 240);
  const Interval e6 = eisenstein_majorant(6, -504);
  switch (kind) {
    case SeriesKind::E2: return e2;
    case SeriesKind::E4: return e4;
    case SeriesKind::E6: return e6;
    case SeriesKind::Delta: return radius_interval() * eta_majorant();
    case SeriesKind::J: return inv_r * pow(e4, 3) * inverse_eta_majorant();
    case SeriesKind::Chi: return inv_r * e2 * e4 * e6 * inverse_eta_majorant();
    case SeriesKind::Xi: return inv_r * e4 * e6 * inverse_eta_majorant();
  }
  throw std::logic_error("unknown series kind");
}

}  // namespace

std::string to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::E2: return "E2";
    case SeriesKind::E4: return "E4";
    case SeriesKind::E6: return "E6";
    case SeriesKind::Delta: return "delta";
    case SeriesKind::J: return "j";
    case SeriesKind::Chi: return "chi";
    case SeriesKind::Xi: return "xi";
  }
  return "?";
}

const Interval& circle_majorant(SeriesKind kind) {
  static std::mutex mutex;
  static std::map<SeriesKind, Interval> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(kind);
  if (it == cache.end()) it = cache.emplace(kind, compute_majorant(kind)).first;
  return it->second;
}

Interval tail_bound(SeriesKind kind, std::int64_t order, const Interval& r) {
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(kPrec, r.precision());
  const Interval R = radius_interval().with_precision(prec);
  const Interval one = Interval::exact(1, prec);
  const Interval ratio = r.magnitude() / R;
  if (!ratio.certainly_less(one)) throw std::domain_error("tail_bound: |q| not below the majorant radius");
  const Interval m = circle_majorant(kind).with_precision(prec);
  if (order <= 0) {
    // Nothing useful: the geometric form still holds for order >= lead, but
    // callers only ask for positive orders.
    throw std::invalid_argument("tail_bound: order must be positive");
  }
  Interval power = pow(ratio, static_cast<unsigned long>(order));
  return m * power / (one - ratio);
}

std::int64_t order_for_bits(SeriesKind kind, const Interval& r, long bits, std::int64_t max_order) {
  const double ratio_log2 = std::log2(r.upper()) - std::log2(kMajorantRadius);
  const double m_log2 = std::log2(circle_majorant(kind).upper());
  std::int64_t n = 1;
  if (ratio_log2 < 0) {
    const double est = (static_cast<double>(bits) + m_log2 + 2.0) / -ratio_log2;
    n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(est)));
  } else {
    return max_order;
  }
  if (!std::isfinite(ratio_log2)) n = 1;
  n = std::min(n, max_order);
  // The estimate is in doubles; confirm with intervals and step up if needed.
  Interval target = Interval::exact(1, 64);
  target.mul_2exp(-bits);
  while (n < max_order && !tail_bound(kind, n, r).certainly_less_equal(target)) ++n;
  return n;
}

}  // namespace chistar

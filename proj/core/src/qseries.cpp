#include "chistar/qseries.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace chistar {

AHMExpansion::AHMExpansion(std::vector<QExpansion> parts) : parts_(std::move(parts)) {}

QExpansion AHMExpansion::part(std::size_t r) const {
  if (r < parts_.size()) return parts_[r];
  return QExpansion(order());
}

int AHMExpansion::degree() const {
  for (std::size_t r = parts_.size(); r-- > 0;) {
    if (!parts_[r].is_zero()) return static_cast<int>(r);
  }
  return -1;
}

std::int64_t AHMExpansion::order() const {
  if (parts_.empty()) return 0;
  std::int64_t out = parts_.front().order();
  for (const auto& p : parts_) out = std::min(out, p.order());
  return out;
}

Integer sigma(unsigned k, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sigma: n must be positive");
  Integer total = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), d, k);
    total += p;
    const std::uint64_t e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(p.get_mpz_t(), e, k);
      total += p;
    }
  }
  return total;
}

namespace {

// Thread-safe per-key cache that only ever grows.
template <class Key, class Value>
class GrowingCache {
 public:
  template <class Size, class Build>
  Value get(const Key& key, std::int64_t needed, Size size_of, Build build) {
    std::int64_t target = needed;
    {
      std::lock_guard lock(mutex_);
      auto it = entries_.find(key);
      if (it != entries_.end()) {
        if (size_of(it->second) >= needed) return it->second;
        // Grow geometrically so that a sweep of increasing requests stays linear.
        target = std::max(needed, size_of(it->second) * 3 / 2);
      }
    }
    // Built without the lock: builders recurse into other cache entries.
    Value value = build(target);
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end() || size_of(it->second) < size_of(value)) entries_.insert_or_assign(key, value);
    return value;
  }

 private:
  std::mutex mutex_;
  std::map<Key, Value> entries_;
};

GrowingCache<unsigned, std::vector<Integer>>& sigma_cache() {
  static GrowingCache<unsigned, std::vector<Integer>> cache;
  return cache;
}

GrowingCache<int, QExpansion>& series_cache() {
  static GrowingCache<int, QExpansion> cache;
  return cache;
}

std::vector<Integer> build_sigma_table(unsigned k, std::uint64_t n) {
  std::vector<Integer> table(n, 0);
  Integer power;
  for (std::uint64_t d = 1; d < n; ++d) {
    mpz_ui_pow_ui(power.get_mpz_t(), d, k);
    for (std::uint64_t m = d; m < n; m += d) table[m] += power;
  }
  return table;
}

enum Kind { kE2 = 2, kE4 = 4, kE6 = 6, kDelta = 10, kEta = 11, kJ = 20, kChi = 21, kXi = 22 };

QExpansion build_eisenstein(int weight, std::int64_t order) {
  long factor = 0;
  switch (weight) {
    case 2: factor = -24; break;
    case 4: factor = 240; break;
    case 6: factor = -504; break;
    default: throw std::invalid_argument("eisenstein: unsupported weight " + std::to_string(weight));
  }
  if (order < 1) throw std::invalid_argument("eisenstein: order must be >= 1");
  const auto sig = sigma_table(static_cast<unsigned>(weight - 1), static_cast<std::uint64_t>(order));
  std::vector<Rational> coeffs(static_cast<std::size_t>(order));
  coeffs[0] = 1;
  for (std::int64_t n = 1; n < order; ++n) coeffs[static_cast<std::size_t>(n)] = Rational(sig[static_cast<std::size_t>(n)] * factor);
  return QExpansion(0, std::move(coeffs), order);
}

QExpansion build_eta(std::int64_t order) {
  if (order < 1) return QExpansion(order);
  // prod (1 - q^n)^24 to order - 1 terms, then shift by q.
  const std::int64_t m = order - 1;
  std::vector<Integer> p(static_cast<std::size_t>(std::max<std::int64_t>(m, 1)), 0);
  p[0] = 1;
  for (std::int64_t n = 1; n < m; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::int64_t e = m - 1; e >= n; --e) p[static_cast<std::size_t>(e)] -= p[static_cast<std::size_t>(e - n)];
    }
  }
  std::vector<Rational> coeffs;
  coeffs.reserve(p.size());
  for (std::int64_t e = 0; e < m; ++e) coeffs.emplace_back(p[static_cast<std::size_t>(e)]);
  return QExpansion(1, std::move(coeffs), order);
}

std::int64_t order_of(const QExpansion& f) { return f.order(); }

QExpansion cached(int kind, std::int64_t order) {
  auto build = [kind](std::int64_t target) -> QExpansion {
    switch (kind) {
      case kE2:
      case kE4:
      case kE6:
        return build_eisenstein(kind, target);
      case kDelta: {
        const auto e4 = eisenstein(4, target);
        const auto e6 = eisenstein(6, target);
        return (e4 * e4 * e4 - e6 * e6).scaled(Rational(1, 1728));
      }
      case kEta:
        return build_eta(target);
      case kJ: {
        const auto e4 = eisenstein(4, target + 2);
        return e4 * e4 * e4 * delta(target + 2).invert();
      }
      case kChi: {
        const auto inv = delta(target + 2).invert();
        return eisenstein(2, target + 2) * eisenstein(4, target + 2) * eisenstein(6, target + 2) * inv;
      }
      case kXi: {
        const auto inv = delta(target + 2).invert();
        return eisenstein(4, target + 2) * eisenstein(6, target + 2) * inv;
      }
      default:
        throw std::logic_error("unknown series kind");
    }
  };
  return series_cache().get(kind, order, order_of, build).truncated(order);
}

}  // namespace

std::vector<Integer> sigma_table(unsigned k, std::uint64_t n) {
  auto size_of = [](const std::vector<Integer>& t) { return static_cast<std::int64_t>(t.size()); };
  auto build = [k](std::int64_t target) { return build_sigma_table(k, static_cast<std::uint64_t>(target)); };
  auto table = sigma_cache().get(k, static_cast<std::int64_t>(n), size_of, build);
  table.resize(n);
  return table;
}

QExpansion eisenstein(int weight, std::int64_t order) {
  if (weight != 2 && weight != 4 && weight != 6) {
    throw std::invalid_argument("eisenstein: unsupported weight " + std::to_string(weight));
  }
  if (order < 1) throw std::invalid_argument("eisenstein: order must be >= 1");
  return cached(weight, order);
}

QExpansion delta(std::int64_t order) {
  if (order < 2) throw std::invalid_argument("delta: order must be >= 2");
  return cached(kDelta, order);
}

QExpansion eta_product(std::int64_t order) {
  if (order < 2) throw std::invalid_argument("eta_product: order must be >= 2");
  return cached(kEta, order);
}

QExpansion j_expansion(std::int64_t order) {
  if (order < 0) throw std::invalid_argument("j_expansion: order must be >= 0");
  return cached(kJ, order);
}

QExpansion chi_expansion(std::int64_t order) {
  if (order < 0) throw std::invalid_argument("chi_expansion: order must be >= 0");
  return cached(kChi, order);
}

QExpansion xi_expansion(std::int64_t order) {
  if (order < 0) throw std::invalid_argument("xi_expansion: order must be >= 0");
  return cached(kXi, order);
}

AHMExpansion chi_star_expansion(std::int64_t order) {
  return AHMExpansion({chi_expansion(order), -xi_expansion(order)});
}

AHMExpansion e2_star_expansion(std::int64_t order) {
  return AHMExpansion({eisenstein(2, std::max<std::int64_t>(order, 1)).truncated(order),
                       QExpansion::constant(Rational(-1), order)});
}

}  // namespace chistar

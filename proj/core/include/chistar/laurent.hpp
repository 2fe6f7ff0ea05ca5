#pragma once

// Truncated Laurent series sum_{n >= lead} c_n x^n + O(x^order) over an exact
// coefficient ring T.
//
// T needs value-initialization to zero, construction from int, +, -, * and ==.
// invert() additionally needs T / T.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chistar {

template <class T>
class LaurentSeries {
 public:
  using Exponent = std::int64_t;

  /// O(x^order): nothing known except that the series vanishes below `order`.
  explicit LaurentSeries(Exponent order = 0) : lead_(order), order_(order) {}

  /// coeffs[k] is the coefficient of x^{lead + k}; order must be >= lead.
  LaurentSeries(Exponent lead, std::vector<T> coeffs, Exponent order)
      : lead_(lead), order_(order), coeffs_(std::move(coeffs)) {
    if (order_ < lead_) throw std::invalid_argument("LaurentSeries: order below lead");
    coeffs_.resize(static_cast<std::size_t>(order_ - lead_));
    normalize();
  }

  static LaurentSeries constant(const T& c, Exponent order) { return monomial(c, 0, order); }

  static LaurentSeries monomial(const T& c, Exponent exponent, Exponent order) {
    if (exponent >= order) return LaurentSeries(order);
    return LaurentSeries(exponent, std::vector<T>{c}, order);
  }

  /// Lowest exponent with a nonzero coefficient; equals order() for O(x^order).
  Exponent lead() const { return lead_; }
  Exponent order() const { return order_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coeffs() const { return coeffs_; }

  /// Coefficient of x^n for n < order (zero below lead).
  T coeff(Exponent n) const {
    if (n >= order_) throw std::out_of_range("LaurentSeries::coeff beyond truncation order");
    if (n < lead_) return T{};
    return coeffs_[static_cast<std::size_t>(n - lead_)];
  }

  const T& leading_coeff() const {
    if (is_zero()) throw std::domain_error("leading coefficient of a zero series");
    return coeffs_.front();
  }

  /// Same series with the truncation lowered to `order` (never raised).
  LaurentSeries truncated(Exponent order) const {
    if (order >= order_) return *this;
    LaurentSeries out(*this);
    out.order_ = order;
    if (order <= out.lead_) {
      out.coeffs_.clear();
      out.lead_ = order;
    } else {
      out.coeffs_.resize(static_cast<std::size_t>(order - out.lead_));
      out.normalize();
    }
    return out;
  }

  LaurentSeries& operator+=(const LaurentSeries& rhs) { return combine(rhs, 1); }
  LaurentSeries& operator-=(const LaurentSeries& rhs) { return combine(rhs, -1); }

  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  LaurentSeries operator-() const {
    LaurentSeries out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    // (A + O(x^Na)) (B + O(x^Nb)) is known below min(Na + lead B, Nb + lead A).
    const Exponent order = std::min(a.order_ + b.lead_, b.order_ + a.lead_);
    if (a.is_zero() || b.is_zero()) return LaurentSeries(order);
    const Exponent lead = a.lead_ + b.lead_;
    if (order <= lead) return LaurentSeries(order);
    std::vector<T> out(static_cast<std::size_t>(order - lead));
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < a.coeffs_.size() && i < n; ++i) {
      if (a.coeffs_[i] == T{}) continue;
      const std::size_t limit = std::min(b.coeffs_.size(), n - i);
      for (std::size_t k = 0; k < limit; ++k) out[i + k] += a.coeffs_[i] * b.coeffs_[k];
    }
    return LaurentSeries(lead, std::move(out), order);
  }
  LaurentSeries& operator*=(const LaurentSeries& rhs) { return *this = *this * rhs; }

  LaurentSeries scaled(const T& c) const {
    if (c == T{}) return LaurentSeries(order_);
    LaurentSeries out(*this);
    for (auto& v : out.coeffs_) v = v * c;
    return out;
  }

  /// Multiplies by x^k.
  LaurentSeries shifted(Exponent k) const {
    LaurentSeries out(*this);
    out.lead_ += k;
    out.order_ += k;
    return out;
  }

  /// 1 / f, known below order - 2 lead.
  LaurentSeries invert() const {
    if (is_zero()) throw std::domain_error("inversion of a zero series");
    const Exponent out_lead = -lead_;
    const Exponent out_order = order_ - 2 * lead_;
    const std::size_t n = static_cast<std::size_t>(out_order - out_lead);
    const T inv_lead = T(1) / coeffs_.front();
    std::vector<T> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      T acc = (k == 0) ? T(1) : T{};
      for (std::size_t i = 1; i <= k && i < coeffs_.size(); ++i) acc -= coeffs_[i] * out[k - i];
      out[k] = acc * inv_lead;
    }
    return LaurentSeries(out_lead, std::move(out), out_order);
  }

  /// Substitutes x -> x^m for m >= 1.
  LaurentSeries stretched(Exponent m) const {
    if (m < 1) throw std::invalid_argument("LaurentSeries::stretched needs m >= 1");
    if (is_zero()) return LaurentSeries(order_ * m);
    std::vector<T> out(static_cast<std::size_t>((order_ - lead_) * m));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k * static_cast<std::size_t>(m)] = coeffs_[k];
    // Terms between x^{m (order-1)} and x^{m order} are known to be zero.
    return LaurentSeries(lead_ * m, std::move(out), order_ * m);
  }

  /// Applies `fn(exponent, coefficient)` to every stored coefficient.
  template <class U, class Fn>
  LaurentSeries<U> transformed(Fn fn) const {
    std::vector<U> out;
    out.reserve(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out.push_back(fn(lead_ + static_cast<Exponent>(k), coeffs_[k]));
    return LaurentSeries<U>(lead_, std::move(out), order_);
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.lead_ == b.lead_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

 private:
  LaurentSeries& combine(const LaurentSeries& rhs, int sign) {
    const Exponent order = std::min(order_, rhs.order_);
    const Exponent lead = std::min(lead_, rhs.lead_);
    if (order <= lead) return *this = LaurentSeries(order);
    std::vector<T> out(static_cast<std::size_t>(order - lead));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Exponent e = lead_ + static_cast<Exponent>(k);
      if (e >= order) break;
      out[static_cast<std::size_t>(e - lead)] = coeffs_[k];
    }
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
      const Exponent e = rhs.lead_ + static_cast<Exponent>(k);
      if (e >= order) break;
      auto& slot = out[static_cast<std::size_t>(e - lead)];
      if (sign > 0) {
        slot += rhs.coeffs_[k];
      } else {
        slot -= rhs.coeffs_[k];
      }
    }
    return *this = LaurentSeries(lead, std::move(out), order);
  }

  void normalize() {
    std::size_t skip = 0;
    while (skip < coeffs_.size() && coeffs_[skip] == T{}) ++skip;
    if (skip == coeffs_.size()) {
      coeffs_.clear();
      lead_ = order_;
      return;
    }
    if (skip > 0) coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(skip));
    lead_ += static_cast<Exponent>(skip);
  }

  Exponent lead_;
  Exponent order_;
  std::vector<T> coeffs_;
};

}  // namespace chistar

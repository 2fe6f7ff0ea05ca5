#include "chistar/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace chistar {

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

QPoly QPoly::constant(const Rational& c) { return QPoly({c}); }
QPoly QPoly::x() { return QPoly({Rational(0), Rational(1)}); }

QPoly QPoly::from_roots(const std::vector<Rational>& roots) {
  QPoly out = constant(1);
  for (const auto& r : roots) out = out * QPoly({-r, Rational(1)});
  return out;
}

Rational QPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const Rational& QPoly::leading() const {
  if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

QPoly& QPoly::operator+=(const QPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[i + k] += a.coeffs_[i] * b.coeffs_[k];
  }
  return QPoly(std::move(out));
}

QPoly QPoly::operator-() const { return scaled(-1); }

QPoly QPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  QPoly out(*this);
  for (auto& v : out.coeffs_) v *= c;
  return out;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly(), a};
  std::vector<Rational> rem = a.coeffs_;
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Rational inv = 1 / b.leading();
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    const Rational c = rem[static_cast<std::size_t>(i)] * inv;
    quot[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int k = 0; k <= db; ++k) rem[static_cast<std::size_t>(i - db + k)] -= c * b.coeffs_[static_cast<std::size_t>(k)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading());
}

QPoly QPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<long>(i);
  return QPoly(std::move(out));
}

QPoly QPoly::gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::optional<QPoly> QPoly::inverse_mod(const QPoly& a, const QPoly& m) {
  // Extended Euclid tracking only the coefficient of a.
  QPoly r0 = m, r1 = a % m;
  QPoly t0, t1 = constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPoly t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.degree() != 0) return std::nullopt;
  return (t0.scaled(1 / r0.leading())) % m;
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

ComplexInterval QPoly::eval(const ComplexInterval& x) const {
  const mpfr_prec_t prec = x.precision();
  ComplexInterval acc(prec);
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= x;
    acc.re() += Interval::of(coeffs_[i], prec);
  }
  return acc;
}

Integer QPoly::common_denominator() const {
  Integer out = 1;
  for (const auto& c : coeffs_) mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), c.get_den_mpz_t());
  return out;
}

Integer QPoly::naive_height() const {
  Integer out = 0;
  for (const auto& c : coeffs_) {
    Integer n = abs(c.get_num());
    out = std::max({out, n, Integer(c.get_den())});
  }
  return out;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rational mag = abs(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = mag == 1;
    if (!unit || i == 0) out += mag.get_str();
    if (i >= 1) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace chistar

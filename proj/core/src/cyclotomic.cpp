#include "chistar/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "chistar/rational.hpp"

namespace chistar {

const QPoly& cyclotomic_polynomial(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
  static std::mutex mutex;
  static std::map<long, QPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<Rational> c(static_cast<std::size_t>(n + 1), Rational(0));
  c[0] = -1;
  c[static_cast<std::size_t>(n)] = 1;
  QPoly out(std::move(c));
  for (long d = 1; d < n; ++d) {
    if (n % d == 0) out = out / cyclotomic_polynomial(d);
  }
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(out)).first->second;
}

namespace {

QPoly x_power(long k) {
  std::vector<Rational> c(static_cast<std::size_t>(k + 1), Rational(0));
  c[static_cast<std::size_t>(k)] = 1;
  return QPoly(std::move(c));
}

}  // namespace

Cyclotomic::Cyclotomic(long n, QPoly value) : n_(n), value_(std::move(value)) {
  if (n_ > 0) value_ = value_ % cyclotomic_polynomial(n_);
}

long Cyclotomic::common(long a, long b) {
  if (a == 0) return b;
  if (b == 0) return a;
  return std::lcm(a, b);
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& frac, long n) {
  if (n < 1) throw std::invalid_argument("root_of_unity: conductor must be positive");
  const Rational scaled = frac * n;
  if (scaled.get_den() != 1) throw std::invalid_argument("root_of_unity: conductor is not a multiple of the denominator");
  Integer k = scaled.get_num() % n;
  if (k < 0) k += n;
  return Cyclotomic(n, x_power(k.get_si()));
}

Cyclotomic Cyclotomic::lifted(long m) const {
  if (m == n_ || (n_ == 0 && is_rational())) {
    Cyclotomic out = *this;
    if (n_ == 0 && m != 0) out.n_ = m;
    return out;
  }
  if (n_ == 0 || m % n_ != 0) throw std::invalid_argument("Cyclotomic::lifted: not a multiple of the conductor");
  // zeta_n = zeta_m^{m/n}.
  const long step = m / n_;
  QPoly out;
  for (int i = 0; i <= value_.degree(); ++i) out += x_power(static_cast<long>(i) * step).scaled(value_.coeff(i));
  return Cyclotomic(m, std::move(out));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
  const long m = common(n_, rhs.n_);
  *this = Cyclotomic(m, lifted(m).value_ + rhs.lifted(m).value_);
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) {
  const long m = common(n_, rhs.n_);
  *this = Cyclotomic(m, lifted(m).value_ - rhs.lifted(m).value_);
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) {
  const long m = common(n_, rhs.n_);
  *this = Cyclotomic(m, lifted(m).value_ * rhs.lifted(m).value_);
  return *this;
}

Cyclotomic Cyclotomic::operator-() const { return Cyclotomic(n_, -value_); }

Cyclotomic Cyclotomic::conj() const {
  if (n_ == 0) return *this;
  QPoly out;
  for (int i = 0; i <= value_.degree(); ++i) out += x_power((n_ - i) % n_).scaled(value_.coeff(i));
  return Cyclotomic(n_, std::move(out));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ == b.n_) return a.value_ == b.value_;
  const long m = Cyclotomic::common(a.n_, b.n_);
  return a.lifted(m).value_ == b.lifted(m).value_;
}

ComplexInterval Cyclotomic::to_complex(mpfr_prec_t prec) const {
  ComplexInterval out = ComplexInterval::real(Interval::exact(0, prec));
  if (is_zero()) return out;
  const Interval two_pi_over_n =
      n_ == 0 ? Interval::exact(0, prec) : Interval::pi(prec).mul_si(2).div_si(n_);
  for (int i = 0; i <= value_.degree(); ++i) {
    const Rational c = value_.coeff(i);
    if (c == 0) continue;
    const Interval angle = two_pi_over_n * Interval::exact(i, prec);
    out += ComplexInterval(cos(angle), sin(angle)) * Interval::of(c, prec);
  }
  return out;
}

std::string Cyclotomic::to_string() const {
  if (is_rational()) return chistar::to_string(value_.coeff(0));
  return value_.to_string("z") + " (z = zeta_" + std::to_string(n_) + ")";
}

// ------------------------------------------------------------ UPoly

UPoly::UPoly(const Cyclotomic& c) {
  if (!c.is_zero()) coeffs_.push_back(c);
}

UPoly::UPoly(std::vector<Cyclotomic> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Cyclotomic& c, int power) {
  std::vector<Cyclotomic> v(static_cast<std::size_t>(power + 1));
  v[static_cast<std::size_t>(power)] = c;
  return UPoly(std::move(v));
}

Cyclotomic UPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return Cyclotomic();
  return coeffs_[static_cast<std::size_t>(k)];
}

int UPoly::low_degree() const {
  for (int k = 0; k <= degree(); ++k) {
    if (!coeffs_[static_cast<std::size_t>(k)].is_zero()) return k;
  }
  return -1;
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UPoly& UPoly::operator+=(const UPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Cyclotomic> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[i + k] += a.coeffs_[i] * b.coeffs_[k];
  }
  return UPoly(std::move(out));
}

UPoly UPoly::operator-() const {
  UPoly out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::string UPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = 0; k <= degree(); ++k) {
    const auto& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (k >= 1) out += "*u";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace chistar

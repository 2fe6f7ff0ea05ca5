#include "chistar/forms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace chistar {

bool QuadraticForm::is_reduced() const {
  if (a <= 0 || std::labs(b) > a || a > c) return false;
  if ((std::labs(b) == a || a == c) && b < 0) return false;
  return true;
}

bool QuadraticForm::is_primitive() const { return std::gcd(std::gcd(a, std::labs(b)), c) == 1; }

UHPoint QuadraticForm::cm_point(mpfr_prec_t prec) const {
  const long D = discriminant();
  Interval re = Interval::exact(-b, prec);
  re.div_si(2 * a);
  Interval im = sqrt(Interval::exact(-D, prec));
  im.div_si(2 * a);
  return {re, im};
}

std::string QuadraticForm::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

bool is_discriminant(long D) {
  if (D >= 0) return false;
  const long r = ((D % 4) + 4) % 4;
  return r == 0 || r == 1;
}

std::vector<QuadraticForm> reduced_forms(long D) {
  if (!is_discriminant(D)) throw std::invalid_argument("invalid discriminant " + std::to_string(D));
  std::vector<QuadraticForm> out;
  const long n = -D;
  // Reduced forms satisfy 3 a^2 <= |D|.
  for (long a = 1; 3 * a * a <= n; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (((b - D) % 2) != 0) continue;
      const long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const QuadraticForm f{a, b, num / (4 * a)};
      if (f.is_reduced() && f.is_primitive()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadraticForm& x, const QuadraticForm& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return out;
}

long class_number(long D) { return static_cast<long>(reduced_forms(D).size()); }

std::vector<long> discriminants_up_to(long dmax) {
  std::vector<long> out;
  for (long n = 3; n <= dmax; ++n) {
    if (is_discriminant(-n)) out.push_back(-n);
  }
  return out;
}

}  // namespace chistar

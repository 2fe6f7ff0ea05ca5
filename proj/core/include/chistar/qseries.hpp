#pragma once

// Exact q-expansions of the level-one objects built from the Eisenstein series:
// E2, E4, E6, the discriminant, j, chi = E2 E4 E6 / Delta, xi = E4 E6 / Delta,
// and the almost-holomorphic chi* = chi - (3/(pi y)) xi.
//
// All coefficients are exact rationals. Results are cached per kind and
// truncated on demand, so repeated requests are cheap and thread-safe.

#include <cstdint>
#include <vector>

#include "chistar/interval.hpp"
#include "chistar/laurent.hpp"

namespace chistar {

using QExpansion = LaurentSeries<Rational>;

/// Polynomial in the formal symbol u = 3/(pi y) with QExpansion coefficients.
/// The factor 3 is folded into the symbol so that chi* has parts (chi, -xi).
class AHMExpansion {
 public:
  AHMExpansion() = default;
  explicit AHMExpansion(std::vector<QExpansion> parts);

  /// Coefficient of u^r; the zero expansion (at the common order) beyond the degree.
  QExpansion part(std::size_t r) const;
  /// Highest r with a nonzero part, or -1 when every part is zero.
  int degree() const;
  std::int64_t order() const;
  const std::vector<QExpansion>& parts() const { return parts_; }

 private:
  std::vector<QExpansion> parts_;
};

/// sigma_k(n) = sum of d^k over divisors d of n.
Integer sigma(unsigned k, std::uint64_t n);

/// sigma_k(1..n-1) from a sieve; index 0 is unused and set to 0.
std::vector<Integer> sigma_table(unsigned k, std::uint64_t n);

/// Weight 2, 4 or 6 with constant term 1 and coefficients -24, 240, -504
/// times sigma_{k-1}. Throws std::invalid_argument for other weights.
QExpansion eisenstein(int weight, std::int64_t order);

/// (E4^3 - E6^2) / 1728.
QExpansion delta(std::int64_t order);
/// q prod_{n >= 1} (1 - q^n)^24, built independently of the Eisenstein series.
QExpansion eta_product(std::int64_t order);

QExpansion j_expansion(std::int64_t order);
QExpansion chi_expansion(std::int64_t order);
QExpansion xi_expansion(std::int64_t order);

/// chi* = chi - u xi: part 0 = chi, part 1 = -xi.
AHMExpansion chi_star_expansion(std::int64_t order);
/// E2* = E2 - u: part 0 = E2, part 1 = the constant -1.
AHMExpansion e2_star_expansion(std::int64_t order);

}  // namespace chistar

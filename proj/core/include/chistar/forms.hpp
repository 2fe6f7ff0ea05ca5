#pragma once

// Reduced primitive positive-definite binary quadratic forms a x^2 + b x y + c y^2.

#include <compare>
#include <string>
#include <vector>

#include "chistar/evaluator.hpp"

namespace chistar {

struct QuadraticForm {
  long a = 1;
  long b = 0;
  long c = 1;

  long discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  bool is_primitive() const;
  bool is_principal() const { return a == 1; }
  /// Root (-b + i sqrt|D|) / (2a) in the upper half-plane.
  UHPoint cm_point(mpfr_prec_t prec) const;
  std::string to_string() const;

  auto operator<=>(const QuadraticForm&) const = default;
};

/// D < 0 and D = 0 or 1 mod 4.
bool is_discriminant(long D);

/// One reduced primitive form per class, sorted by (a, b); the principal form
/// comes first. Throws std::invalid_argument for an invalid discriminant.
std::vector<QuadraticForm> reduced_forms(long D);

long class_number(long D);

/// Valid discriminants in [-dmax, -3], ordered by |D|.
std::vector<long> discriminants_up_to(long dmax);

}  // namespace chistar

#pragma once

// Certified evaluation of j, chi, xi and chi* on the upper half-plane.

#include <array>
#include <cstdint>
#include <string>

#include "chistar/interval.hpp"
#include "chistar/qseries.hpp"
#include "chistar/tails.hpp"

namespace chistar {

/// A point of the upper half-plane given by an enclosing box.
struct UHPoint {
  Interval re;
  Interval im;

  static UHPoint from_decimal(const std::string& re, const std::string& im, mpfr_prec_t prec);
  static UHPoint from_box(ComplexInterval z);
  mpfr_prec_t precision() const { return re.precision(); }
  ComplexInterval box() const { return {re, im}; }
};

/// Integer matrix (a b; c d) acting by Mobius transformations.
struct Matrix2 {
  Integer a = 1, b = 0, c = 0, d = 1;

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  Integer det() const { return a * d - b * c; }
  bool operator==(const Matrix2&) const = default;
};

/// Box of (a z + b) / (c z + d).
UHPoint apply(const Matrix2& g, const UHPoint& z);

struct Reduction {
  UHPoint point;
  Matrix2 matrix;  // in SL2(Z), maps the input to point
};

/// Moves z into the closed fundamental domain |z| >= 1, |Re z| <= 1/2. The
/// matrix is chosen from the box midpoint; the returned box is the exact image
/// of the input box, so it can overhang the boundary by the input width.
Reduction reduce_to_fundamental_domain(const UHPoint& z);

struct EvalOptions {
  mpfr_prec_t prec_bits = 128;
  std::int64_t order = 0;  // truncation order; 0 picks one from prec_bits
};

/// q = e^{2 pi i z} and 1/q.
ComplexInterval q_of(const UHPoint& z);
ComplexInterval q_inverse_of(const UHPoint& z);

/// True when the box lies in the fundamental domain up to a small slack.
bool in_fundamental_domain(const UHPoint& z);

/// Sum of the stored coefficients of f at z plus a disc of radius tail_const.
/// Throws std::domain_error when z is outside the fundamental domain.
CertifiedValue eval_qexp(const QExpansion& f, const UHPoint& z, const Interval& tail_const);

/// One of the built-in series at z (z must lie in the fundamental domain),
/// truncated at an order matched to the precision, with a rigorous tail.
CertifiedValue eval_series(SeriesKind kind, const UHPoint& z, const EvalOptions& options = {});

CertifiedValue eval_j(const UHPoint& z, const EvalOptions& options = {});
CertifiedValue eval_chi(const UHPoint& z, const EvalOptions& options = {});
CertifiedValue eval_xi(const UHPoint& z, const EvalOptions& options = {});
/// chi(z) - 3/(pi Im z) xi(z) evaluated at the reduced representative.
CertifiedValue eval_chi_star(const UHPoint& z, const EvalOptions& options = {});

/// Both j and chi* at one point, sharing the reduction.
struct SpecialPair {
  CertifiedValue j;
  CertifiedValue chi_star;
};
SpecialPair eval_j_chi_star(const UHPoint& z, const EvalOptions& options = {});

}  // namespace chistar

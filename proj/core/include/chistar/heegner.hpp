#pragma once

// Special values at CM points and class polynomials H_j, H_chi*.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chistar/evaluator.hpp"
#include "chistar/forms.hpp"
#include "chistar/poly.hpp"

namespace chistar {

class ClassPolyCache;

enum class PolyKind { J, ChiStar };

std::string to_string(PolyKind kind);
/// Accepts "j" and "chi-star".
PolyKind parse_poly_kind(const std::string& text);

/// Raised when a requested accuracy is not reached within the escalation cap.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpecialValue {
  QuadraticForm form;
  UHPoint tau;
  CertifiedValue j;
  CertifiedValue chi_star;
};

struct SpecialOptions {
  long target_bits = 64;     // every radius must be at most 2^-target_bits
  mpfr_prec_t prec_bits = 0;  // starting working precision; 0 derives it from D
  int max_doublings = 3;
};

/// Bits needed to hold |q^{-1}| at the principal point of discriminant D.
long magnitude_bits(long D);

/// Values at a fixed working precision, no accuracy target.
std::vector<SpecialValue> special_values_at(long D, mpfr_prec_t prec);

/// One entry per reduced form, in reduced_forms order.
std::vector<SpecialValue> special_values(long D, const SpecialOptions& options = {});

struct ClassPolynomial {
  long D = 0;
  PolyKind kind = PolyKind::J;
  QPoly poly;
  mpfr_prec_t precision = 0;  // precision at which the coefficients were recognized
  bool from_cache = false;
};

struct ClassPolyOptions {
  mpfr_prec_t prec_bits = 0;  // starting precision; 0 derives it from D
  int max_doublings = 6;
  const ClassPolyCache* cache = nullptr;
};

/// Enclosure of prod (X - x_i) over the special values of one kind.
std::vector<ComplexInterval> class_polynomial_enclosure(const std::vector<SpecialValue>& values, PolyKind kind);

/// Monic polynomial with exactly recognized coefficients: integers for j,
/// simplest rationals with denominator <= 2^{a/4} (a = accurate bits) for chi*.
/// Each candidate is re-verified against an enclosure at twice the precision.
/// Throws PrecisionError when recognition fails within the escalation cap.
ClassPolynomial class_polynomial(long D, PolyKind kind, const ClassPolyOptions& options = {});

inline constexpr long kGapThreshold = 5595;

struct GapEntry {
  QuadraticForm form;
  Interval abs_value;  // |chi*(tau)|
  Interval margin;     // |x'| - |x| - 5595
};

struct GapReport {
  long D = 0;
  long class_number = 0;
  bool applicable = false;  // h >= 2 and |D| >= 15
  bool pass = false;
  bool inconclusive = false;
  Interval principal_abs;
  std::vector<GapEntry> entries;
};

/// Checks |x'| > |x| + 5595 for the principal value x' against every other
/// class, escalating precision when a margin straddles zero.
GapReport verify_gap(long D, const SpecialOptions& options = {});

}  // namespace chistar

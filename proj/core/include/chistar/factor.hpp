#pragma once

// Factorization of rational polynomials over Q (Zassenhaus: factor modulo a
// small prime, Hensel-lift, recombine).

#include <vector>

#include "chistar/poly.hpp"

namespace chistar {

struct PolyFactor {
  QPoly factor;  // primitive integer polynomial with positive leading coefficient
  int multiplicity = 1;
};

/// Irreducible factors of f over Q (up to a rational unit), with multiplicity,
/// sorted by degree then coefficients. Throws for the zero polynomial.
std::vector<PolyFactor> factor_over_q(const QPoly& f);

/// True when deg f >= 1 and f has no nontrivial factorization over Q.
bool is_irreducible_over_q(const QPoly& f);

/// Primitive integer polynomial proportional to f with positive leading coefficient.
QPoly primitive_part(const QPoly& f);

}  // namespace chistar

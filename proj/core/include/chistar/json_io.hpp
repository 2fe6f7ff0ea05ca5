#pragma once

// JSON encodings shared by the cache and the command-line tool.
//
// A rational is [num, den]; each part is a JSON integer when it fits in 64
// bits and a decimal string otherwise, so big values survive round trips.

#include <nlohmann/json.hpp>

#include "chistar/interval.hpp"
#include "chistar/poly.hpp"
#include "chistar/qseries.hpp"

namespace chistar {

nlohmann::json integer_to_json(const Integer& value);
Integer integer_from_json(const nlohmann::json& value);

nlohmann::json rational_to_json(const Rational& value);
/// Accepts [num, den], a JSON integer, or a string "num/den".
Rational rational_from_json(const nlohmann::json& value);

/// {lead, order, coeffs: [[num, den], ...]}
nlohmann::json expansion_to_json(const QExpansion& f);
QExpansion expansion_from_json(const nlohmann::json& value);

/// Coefficients from X^0 upward as [[num, den], ...].
nlohmann::json poly_to_json(const QPoly& p);
QPoly poly_from_json(const nlohmann::json& value);

/// Round-trip decimal string of an MPFR value.
std::string decimal(const BigFloat& x);

}  // namespace chistar

#pragma once

// j-maps and chi-maps tau -> f(g tau) for g = (a b; 0 d), their expansions in
// fractional powers of q, and the collinearity determinant built from them.
//
// Expansions use t = q^{1/L} and coefficients in Q(zeta_N)[u], u = 3/(pi y),
// y = Im tau. A nonconstant map of level r = a/d and twist e^{2 pi i b/d}
// has leading term lambda q^{-r} with lambda = e^{-2 pi i b/d}; the chi-map
// carries the extra -(u/r) times the twisted xi.

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chistar/cyclotomic.hpp"
#include "chistar/laurent.hpp"

namespace chistar {

class ClassPolyCache;

enum class MapKind { J, Chi };
std::string to_string(MapKind kind);

struct ModularMap {
  MapKind kind = MapKind::J;
  bool constant = false;
  Rational level;       // a/d > 0 for nonconstant maps, 0 for constants
  Rational twist;       // b/d reduced into [0, 1)
  long disc = 0;        // constants: discriminant with class number one
  int class_index = 0;  // constants: index into reduced_forms(disc)

  static ModularMap nonconstant(MapKind kind, const Rational& level, const Rational& twist);
  static ModularMap constant_at(MapKind kind, long disc, int class_index = 0);

  /// {"kind": "j"|"chi", "level": "a/d", "twist": "b/d"} or
  /// {"kind": ..., "constant": {"disc": D, "class": i}}.
  static ModularMap from_json(const nlohmann::json& value);
  nlohmann::json to_json() const;
  std::string to_string() const;

  /// e^{-2 pi i twist}.
  Cyclotomic leading_coefficient(long conductor) const;

  bool operator==(const ModularMap&) const = default;
};

/// A j-map F and a chi-map G sharing level and twist, or constants from the same point.
struct ConsistentPair {
  ModularMap f;
  ModularMap g;

  ConsistentPair(ModularMap f, ModularMap g);  // throws when inconsistent
  static ConsistentPair nonconstant(const Rational& level, const Rational& twist);
  static ConsistentPair constant_at(long disc, int class_index = 0);
  bool operator==(const ConsistentPair&) const = default;
};

using FormalSeries = LaurentSeries<UPoly>;

/// Shared variable and coefficient field for a set of maps.
struct ExpansionFrame {
  std::int64_t L = 1;  // t = q^{1/L}
  long conductor = 1;  // coefficients in Q(zeta_conductor)
  static ExpansionFrame for_maps(const std::vector<ModularMap>& maps);
};

/// Exact value of a constant map (class number one only).
Rational constant_map_value(const ModularMap& m, const ClassPolyCache* cache = nullptr);

/// Expansion known below q^order, i.e. below t^{order L}.
FormalSeries map_expansion(const ModularMap& m, std::int64_t order, const ExpansionFrame& frame,
                           const ClassPolyCache* cache = nullptr);
FormalSeries map_expansion(const ModularMap& m, std::int64_t order);

struct FormalDeterminant {
  ExpansionFrame frame;
  std::array<std::array<FormalSeries, 3>, 3> entries;  // row 0 is (1, 1, 1)
  FormalSeries value;
};

/// det [[1, 1, 1], [F1, F2, F3], [G1, G2, G3]].
FormalDeterminant collinearity_determinant(const std::array<ModularMap, 3>& top, const std::array<ModularMap, 3>& bottom,
                                           std::int64_t order, const ClassPolyCache* cache = nullptr);

struct DominantTerm {
  UPoly coefficient;      // polynomial in u
  Rational q_exponent;    // exponent of q
  int u_power = 0;        // lowest power of u present
  bool vanishes = false;  // the leading-order formula is zero
  bool equal_maps = false;  // vanishing because two of the pairs coincide
  std::string description;
};

/// Leading monomial of the collinearity determinant of three consistent pairs.
/// Requires pair 0 nonconstant with level strictly above the other two.
DominantTerm dominant_term(const std::array<ConsistentPair, 3>& pairs, const ClassPolyCache* cache = nullptr);

/// Lowest monomial of a formal series: (t exponent, coefficient); nullopt when zero.
struct LeadingMonomial {
  std::int64_t t_exponent = 0;
  UPoly coefficient;
};
std::optional<LeadingMonomial> leading_monomial(const FormalSeries& f);

/// dominant_term compared with the lowest monomial of the full expansion.
/// When the formula vanishes, the expansion must start strictly later.
struct DominantCheck {
  DominantTerm predicted;
  std::optional<LeadingMonomial> observed;
  Rational observed_q_exponent;  // meaningless when observed is empty
  std::int64_t order = 0;        // q-order of the expansion used
  bool match = false;
};
DominantCheck check_dominant_term(const std::array<ConsistentPair, 3>& pairs, std::int64_t order = 4,
                                  const ClassPolyCache* cache = nullptr);

struct SplitDeterminant {
  ExpansionFrame frame;
  FormalSeries combined;
  FormalSeries holomorphic;     // u^0 part
  FormalSeries nonholomorphic;  // u^{>=1} parts
  std::int64_t known_order = 0;  // t-order below which all three are exact
  bool combined_vanishes = false;
  bool holomorphic_vanishes = false;
  bool nonholomorphic_vanishes = false;
};

/// Six chi-maps arranged as det [[1, 1, 1], [f1, f2, f3], [g1, g2, g3]].
SplitDeterminant split_determinant(const std::array<ModularMap, 6>& maps, std::int64_t order = 8,
                                   const ClassPolyCache* cache = nullptr);

}  // namespace chistar

#include "chistar/modmaps.hpp"

#include <numeric>
#include <stdexcept>

#include "chistar/forms.hpp"
#include "chistar/heegner.hpp"
#include "chistar/json_io.hpp"
#include "chistar/qseries.hpp"
#include "chistar/rational.hpp"

namespace chistar {

namespace {

Rational reduced_twist(const Rational& twist) {
  // Fractional part in [0, 1).
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), twist.get_num_mpz_t(), twist.get_den_mpz_t());
  Rational out = twist - Rational(fl);
  out.canonicalize();
  return out;
}

Integer ceil_div(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

FormalSeries one_series(std::int64_t order) { return FormalSeries::constant(UPoly(1), order); }

}  // namespace

std::string to_string(MapKind kind) { return kind == MapKind::J ? "j" : "chi"; }

ModularMap ModularMap::nonconstant(MapKind kind, const Rational& level, const Rational& twist) {
  if (level <= 0) throw std::invalid_argument("map level must be positive");
  ModularMap m;
  m.kind = kind;
  m.level = level;
  m.level.canonicalize();
  m.twist = reduced_twist(twist);
  return m;
}

ModularMap ModularMap::constant_at(MapKind kind, long disc, int class_index) {
  if (!is_discriminant(disc)) throw std::invalid_argument("invalid discriminant " + std::to_string(disc));
  if (class_index < 0 || class_index >= class_number(disc)) throw std::invalid_argument("class index out of range");
  ModularMap m;
  m.kind = kind;
  m.constant = true;
  m.level = 0;
  m.twist = 0;
  m.disc = disc;
  m.class_index = class_index;
  return m;
}

ModularMap ModularMap::from_json(const nlohmann::json& value) {
  if (!value.is_object() || !value.contains("kind")) throw std::invalid_argument("map needs a 'kind'");
  const std::string k = value["kind"].get<std::string>();
  MapKind kind;
  if (k == "j") {
    kind = MapKind::J;
  } else if (k == "chi" || k == "chi-star") {
    kind = MapKind::Chi;
  } else {
    throw std::invalid_argument("unknown map kind '" + k + "'");
  }
  if (value.contains("constant")) {
    const auto& c = value["constant"];
    return constant_at(kind, c.at("disc").get<long>(), c.value("class", 0));
  }
  if (!value.contains("level")) throw std::invalid_argument("nonconstant map needs a 'level'");
  const Rational level = rational_from_json(value["level"]);
  const Rational twist = value.contains("twist") ? rational_from_json(value["twist"]) : Rational(0);
  return nonconstant(kind, level, twist);
}

nlohmann::json ModularMap::to_json() const {
  if (constant) return {{"kind", chistar::to_string(kind)}, {"constant", {{"disc", disc}, {"class", class_index}}}};
  return {{"kind", chistar::to_string(kind)}, {"level", chistar::to_string(level)}, {"twist", chistar::to_string(twist)}};
}

std::string ModularMap::to_string() const {
  if (constant) return chistar::to_string(kind) + "-map constant at D = " + std::to_string(disc) + " class " + std::to_string(class_index);
  return chistar::to_string(kind) + "-map level " + chistar::to_string(level) + " twist e^{2 pi i " + chistar::to_string(twist) + "}";
}

Cyclotomic ModularMap::leading_coefficient(long conductor) const {
  if (constant) throw std::logic_error("constant maps have no leading coefficient");
  return Cyclotomic::root_of_unity(-twist, conductor);
}

ConsistentPair::ConsistentPair(ModularMap f_, ModularMap g_) : f(std::move(f_)), g(std::move(g_)) {
  if (f.kind != MapKind::J || g.kind != MapKind::Chi) throw std::invalid_argument("a pair is a j-map and a chi-map");
  const bool same = f.constant == g.constant &&
                    (f.constant ? (f.disc == g.disc && f.class_index == g.class_index) : (f.level == g.level && f.twist == g.twist));
  if (!same) throw std::invalid_argument("inconsistent pair: level and twist (or the constant point) must agree");
}

ConsistentPair ConsistentPair::nonconstant(const Rational& level, const Rational& twist) {
  return {ModularMap::nonconstant(MapKind::J, level, twist), ModularMap::nonconstant(MapKind::Chi, level, twist)};
}

ConsistentPair ConsistentPair::constant_at(long disc, int class_index) {
  return {ModularMap::constant_at(MapKind::J, disc, class_index), ModularMap::constant_at(MapKind::Chi, disc, class_index)};
}

ExpansionFrame ExpansionFrame::for_maps(const std::vector<ModularMap>& maps) {
  ExpansionFrame frame;
  for (const auto& m : maps) {
    if (m.constant) continue;
    frame.L = std::lcm(frame.L, static_cast<std::int64_t>(m.level.get_den().get_si()));
    frame.conductor = std::lcm(frame.conductor, m.twist.get_den().get_si());
  }
  return frame;
}

Rational constant_map_value(const ModularMap& m, const ClassPolyCache* cache) {
  if (!m.constant) throw std::invalid_argument("constant_map_value: map is not constant");
  if (class_number(m.disc) != 1)
    throw std::invalid_argument("constant maps are supported for class number one only (D = " + std::to_string(m.disc) + ")");
  ClassPolyOptions options;
  options.cache = cache;
  const auto poly = class_polynomial(m.disc, m.kind == MapKind::J ? PolyKind::J : PolyKind::ChiStar, options).poly;
  return -poly.coeff(0);
}

FormalSeries map_expansion(const ModularMap& m, std::int64_t order, const ExpansionFrame& frame, const ClassPolyCache* cache) {
  const std::int64_t t_order = order * frame.L;
  if (m.constant) return FormalSeries::constant(UPoly(Cyclotomic(constant_map_value(m, cache))), t_order);
  const Rational stretch = m.level * frame.L;
  if (stretch.get_den() != 1) throw std::invalid_argument("map_expansion: frame L does not clear the level denominator");
  if (frame.conductor % m.twist.get_den().get_si() != 0)
    throw std::invalid_argument("map_expansion: frame conductor does not contain the twist");
  // Known below q_g^M with q_g^M = q^{M r}; M r >= order.
  const std::int64_t M = std::max<std::int64_t>(1, ceil_div(Rational(order) / m.level).get_si());
  std::vector<UPoly> coeffs;
  if (m.kind == MapKind::J) {
    const QExpansion j = j_expansion(M);
    for (std::int64_t n = -1; n < M; ++n) {
      coeffs.emplace_back(Cyclotomic::root_of_unity(m.twist * n, frame.conductor) * Cyclotomic(j.coeff(n)));
    }
  } else {
    const QExpansion chi = chi_expansion(M);
    const QExpansion xi = xi_expansion(M);
    const Rational inv_r = 1 / m.level;
    for (std::int64_t n = -1; n < M; ++n) {
      const Cyclotomic z = Cyclotomic::root_of_unity(m.twist * n, frame.conductor);
      coeffs.emplace_back(std::vector<Cyclotomic>{z * Cyclotomic(chi.coeff(n)), z * Cyclotomic(Rational(-xi.coeff(n) * inv_r))});
    }
  }
  const FormalSeries base(-1, std::move(coeffs), M);
  return base.stretched(stretch.get_num().get_si()).truncated(t_order);
}

FormalSeries map_expansion(const ModularMap& m, std::int64_t order) {
  return map_expansion(m, order, ExpansionFrame::for_maps({m}));
}

FormalDeterminant collinearity_determinant(const std::array<ModularMap, 3>& top, const std::array<ModularMap, 3>& bottom,
                                           std::int64_t order, const ClassPolyCache* cache) {
  FormalDeterminant det;
  det.frame = ExpansionFrame::for_maps({top[0], top[1], top[2], bottom[0], bottom[1], bottom[2]});
  for (std::size_t c = 0; c < 3; ++c) {
    det.entries[0][c] = one_series(order * det.frame.L);
    det.entries[1][c] = map_expansion(top[c], order, det.frame, cache);
    det.entries[2][c] = map_expansion(bottom[c], order, det.frame, cache);
  }
  const auto& F = det.entries[1];
  const auto& G = det.entries[2];
  det.value = (F[1] - F[0]) * (G[2] - G[0]) - (F[2] - F[0]) * (G[1] - G[0]);
  return det;
}

std::optional<LeadingMonomial> leading_monomial(const FormalSeries& f) {
  if (f.is_zero()) return std::nullopt;
  return LeadingMonomial{f.lead(), f.leading_coeff()};
}

DominantTerm dominant_term(const std::array<ConsistentPair, 3>& pairs, const ClassPolyCache* cache) {
  const auto& p1 = pairs[0];
  if (p1.f.constant) {
    const bool all_constant = pairs[1].f.constant && pairs[2].f.constant;
    throw std::invalid_argument(all_constant ? "degenerate configuration: all maps constant"
                                             : "the first pair must be nonconstant with the strictly highest level");
  }
  const Rational r1 = p1.f.level;
  const Rational r2 = pairs[1].f.level;
  const Rational r3 = pairs[2].f.level;
  if (!(r1 > r2 && r1 > r3)) throw std::invalid_argument("dominant_term needs r1 > max(r2, r3)");
  const ExpansionFrame frame =
      ExpansionFrame::for_maps({p1.f, pairs[1].f, pairs[2].f});
  const long n = frame.conductor;
  const Cyclotomic l1 = p1.f.leading_coefficient(n);
  DominantTerm out;
  const Rational inv1 = 1 / r1;
  if (r2 > r3) {
    const Cyclotomic l2 = pairs[1].f.leading_coefficient(n);
    out.coefficient = UPoly::monomial(l1 * l2 * Cyclotomic(Rational(inv1 - 1 / r2)), 1);
    out.q_exponent = -(r1 + r2);
    out.description = "r2 > r3: u lambda1 lambda2 (1/r1 - 1/r2) q^{-(r1 + r2)}";
  } else if (r3 > r2) {
    const Cyclotomic l3 = pairs[2].f.leading_coefficient(n);
    out.coefficient = UPoly::monomial(-(l1 * l3 * Cyclotomic(Rational(inv1 - 1 / r3))), 1);
    out.q_exponent = -(r1 + r3);
    out.description = "r3 > r2: -u lambda1 lambda3 (1/r1 - 1/r3) q^{-(r1 + r3)}";
  } else if (r2 > 0) {
    const Cyclotomic l2 = pairs[1].f.leading_coefficient(n);
    const Cyclotomic l3 = pairs[2].f.leading_coefficient(n);
    out.coefficient = UPoly::monomial(l1 * (l2 - l3) * Cyclotomic(Rational(inv1 - 1 / r2)), 1);
    out.q_exponent = -(r1 + r2);
    out.description = "r2 = r3: u lambda1 (lambda2 - lambda3) (1/r1 - 1/r2) q^{-(r1 + r2)}";
    out.equal_maps = l2 == l3;
  } else {
    // Both constant: lambda1 ((c2 - c3) + (j3 - j2)) - u lambda1 (j3 - j2)/r1 at q^{-r1}.
    const Rational j2 = constant_map_value(pairs[1].f, cache);
    const Rational j3 = constant_map_value(pairs[2].f, cache);
    const Rational c2 = constant_map_value(pairs[1].g, cache);
    const Rational c3 = constant_map_value(pairs[2].g, cache);
    out.coefficient = UPoly(std::vector<Cyclotomic>{l1 * Cyclotomic(Rational(c2 - c3 + j3 - j2)),
                                                    -(l1 * Cyclotomic(Rational((j3 - j2) * inv1)))});
    out.q_exponent = -r1;
    out.description = "r2 = r3 = 0: lambda1 ((c2 - c3) + (j3 - j2) (1 - u/r1)) q^{-r1}";
    out.equal_maps = pairs[1] == pairs[2];
  }
  out.vanishes = out.coefficient.is_zero();
  out.u_power = out.coefficient.low_degree();
  return out;
}

DominantCheck check_dominant_term(const std::array<ConsistentPair, 3>& pairs, std::int64_t order, const ClassPolyCache* cache) {
  DominantCheck out;
  out.predicted = dominant_term(pairs, cache);
  out.order = order;
  const FormalDeterminant det = collinearity_determinant({pairs[0].f, pairs[1].f, pairs[2].f},
                                                         {pairs[0].g, pairs[1].g, pairs[2].g}, order, cache);
  out.observed = leading_monomial(det.value);
  if (out.observed) {
    out.observed_q_exponent = Rational(out.observed->t_exponent, det.frame.L);
    out.observed_q_exponent.canonicalize();
  }
  if (out.predicted.vanishes) {
    // the expansion is only known below q^order, so an empty one is consistent
    out.match = !out.observed || out.observed_q_exponent > out.predicted.q_exponent;
  } else {
    out.match = out.observed && out.observed_q_exponent == out.predicted.q_exponent &&
                out.observed->coefficient == out.predicted.coefficient;
  }
  return out;
}

SplitDeterminant split_determinant(const std::array<ModularMap, 6>& maps, std::int64_t order, const ClassPolyCache* cache) {
  for (const auto& m : maps) {
    if (m.kind != MapKind::Chi) throw std::invalid_argument("split_determinant takes six chi-maps");
  }
  const FormalDeterminant det = collinearity_determinant({maps[0], maps[1], maps[2]}, {maps[3], maps[4], maps[5]}, order, cache);
  SplitDeterminant out;
  out.frame = det.frame;
  out.combined = det.value;
  out.holomorphic = det.value.transformed<UPoly>([](std::int64_t, const UPoly& c) { return UPoly(c.coeff(0)); });
  out.nonholomorphic = det.value.transformed<UPoly>([](std::int64_t, const UPoly& c) { return c - UPoly(c.coeff(0)); });
  out.known_order = det.value.order();
  out.combined_vanishes = out.combined.is_zero();
  out.holomorphic_vanishes = out.holomorphic.is_zero();
  out.nonholomorphic_vanishes = out.nonholomorphic.is_zero();
  return out;
}

}  // namespace chistar

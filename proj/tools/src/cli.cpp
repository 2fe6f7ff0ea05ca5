#include "chistar/cli.hpp"

#include <CLI11.hpp>
#include <mpfr.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "chistar/bounds.hpp"
#include "chistar/cache.hpp"
#include "chistar/evaluator.hpp"
#include "chistar/factor.hpp"
#include "chistar/heegner.hpp"
#include "chistar/json_io.hpp"
#include "chistar/modmaps.hpp"
#include "chistar/parallel.hpp"
#include "chistar/qseries.hpp"
#include "chistar/rational.hpp"
#include "chistar/search.hpp"

namespace chistar::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What a subcommand produced. `doc` is the json rendering, `lines` the jsonl
// stream (falls back to doc on one line), `table` the human-readable one.
struct Output {
  json doc;
  std::vector<json> lines;
  std::string table;
  int status = kExitOk;
};

const std::vector<std::string> kSubcommands = {"expand",        "eval",       "special",          "classpoly",
                                               "verify-bounds", "ao-search",  "collinear-search", "maps-det"};

json read_json_file(const std::string& path) {
  if (path.empty()) throw UsageError("missing input file");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::unique_ptr<ClassPolyCache> open_cache(const RunConfig& config) {
  if (!config.cache_dir.empty()) return std::make_unique<ClassPolyCache>(config.cache_dir);
  if (auto dir = ClassPolyCache::directory_from_env()) return std::make_unique<ClassPolyCache>(*dir);
  return nullptr;
}

json certified_json(const CertifiedValue& v) {
  return {{"mid_re", decimal(v.mid_re())}, {"mid_im", decimal(v.mid_im())}, {"rad", decimal(v.radius())}};
}

// Short form for tables.
std::string short_value(const CertifiedValue& v) {
  std::string out = v.mid_re().to_string(17);
  if (!v.box().im().contains_zero()) {
    const std::string im = v.mid_im().to_string(17);
    out += im.front() == '-' ? " - " + im.substr(1) + "i" : " + " + im + "i";
  }
  return out + " +/- " + v.radius().to_string(3);
}

// The integer the enclosure pins down: radius below 1/2 and a real box.
std::optional<Integer> rounded_integer(const CertifiedValue& v) {
  if (!(v.radius().to_double(MPFR_RNDU) < 0.5) || !v.box().im().contains_zero()) return std::nullopt;
  Integer out;
  mpfr_get_z(out.get_mpz_t(), v.mid_re().get(), MPFR_RNDN);
  if (!v.contains(Rational(out))) return std::nullopt;
  return out;
}

json form_json(const QuadraticForm& f) { return json::array({f.a, f.b, f.c}); }

json interval_json(const Interval& x) { return {{"lo", x.lo().to_string(20)}, {"hi", x.hi().to_string(20)}}; }

std::vector<long> requested_discriminants(const RunConfig& config) {
  std::vector<long> out;
  for (long D : config.discs) {
    if (!is_discriminant(D)) throw UsageError("not a negative discriminant: " + std::to_string(D));
    out.push_back(D);
  }
  if (config.d_max > 0) {
    for (long D : discriminants_up_to(config.d_max)) out.push_back(D);
  }
  if (out.empty()) throw UsageError("give --disc or --max-disc");
  // keep the user's order but drop repeats
  std::vector<long> unique;
  std::set<long> seen;
  for (long D : out) {
    if (seen.insert(D).second) unique.push_back(D);
  }
  return unique;
}

// ------------------------------------------------------------------ expand

Output run_expand(const RunConfig& config) {
  const std::int64_t order = config.order > 0 ? config.order : 10;
  const std::string& f = config.function;
  Output out;
  if (f == "chi-star" || f == "e2-star") {
    const AHMExpansion e = f == "chi-star" ? chi_star_expansion(order) : e2_star_expansion(order);
    json parts = json::array();
    for (const auto& p : e.parts()) parts.push_back(expansion_to_json(p));
    out.doc = {{"function", f}, {"symbol", "u = 3/(pi y)"}, {"parts", parts}};
    std::ostringstream table;
    for (std::size_t r = 0; r < e.parts().size(); ++r) {
      const auto& p = e.parts()[r];
      for (std::int64_t n = p.lead(); n < p.order(); ++n) {
        table << "u^" << r << " q^" << n << "  " << to_string(p.coeff(n)) << "\n";
      }
    }
    out.table = table.str();
    return out;
  }
  QExpansion e;
  if (f == "j") e = j_expansion(order);
  else if (f == "chi") e = chi_expansion(order);
  else if (f == "xi") e = xi_expansion(order);
  else if (f == "e2") e = eisenstein(2, order);
  else if (f == "e4") e = eisenstein(4, order);
  else if (f == "e6") e = eisenstein(6, order);
  else if (f == "delta") e = delta(order);
  else if (f == "eta-product") e = eta_product(order);
  else throw UsageError("unknown function for expand: " + f);
  out.doc = expansion_to_json(e);
  out.doc["function"] = f;
  std::ostringstream table;
  for (std::int64_t n = e.lead(); n < e.order(); ++n) table << "q^" << n << "  " << to_string(e.coeff(n)) << "\n";
  out.table = table.str();
  return out;
}

// -------------------------------------------------------------------- eval

Output run_eval(const RunConfig& config) {
  const mpfr_prec_t prec = config.prec_bits;
  UHPoint z;
  try {
    z = UHPoint::from_decimal(config.tau_re, config.tau_im, prec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!z.im.is_positive()) throw UsageError("--tau-im must be positive");
  const EvalOptions options{prec, config.order};
  const std::string& f = config.function;
  CertifiedValue v(ComplexInterval(64));
  if (f == "j") v = eval_j(z, options);
  else if (f == "chi") v = eval_chi(z, options);
  else if (f == "xi") v = eval_xi(z, options);
  else if (f == "chi-star") v = eval_chi_star(z, options);
  else throw UsageError("unknown function for eval: " + f);
  Output out;
  out.doc = certified_json(v);
  out.doc["function"] = f;
  out.doc["tau"] = {{"re", config.tau_re}, {"im", config.tau_im}};
  out.doc["prec_bits"] = config.prec_bits;
  out.table = f + "(" + config.tau_re + " + " + config.tau_im + "i) = " + short_value(v) + "\n";
  return out;
}

// ----------------------------------------------------------------- special

Output run_special(const RunConfig& config) {
  const std::vector<long> discs = requested_discriminants(config);
  SpecialOptions options;
  options.target_bits = 16;
  options.prec_bits = config.prec_bits;
  options.max_doublings = 6;
  const auto results = parallel_map(discs.size(), config.workers, [&](std::size_t i) {
    return special_values(discs[i], options);
  });
  Output out;
  out.doc = {{"results", json::array()}};
  std::ostringstream table;
  for (std::size_t i = 0; i < discs.size(); ++i) {
    json values = json::array();
    for (const auto& v : results[i]) {
      json entry = {{"form", form_json(v.form)},
                    {"tau", {{"re", decimal(v.tau.re.mid())}, {"im", decimal(v.tau.im.mid())}}},
                    {"j", certified_json(v.j)},
                    {"chi_star", certified_json(v.chi_star)}};
      if (auto n = rounded_integer(v.j)) entry["j_rounded"] = integer_to_json(*n);
      if (auto n = rounded_integer(v.chi_star)) entry["chi_star_rounded"] = integer_to_json(*n);
      values.push_back(std::move(entry));
      table << std::setw(6) << discs[i] << "  " << v.form.to_string() << "  j = " << short_value(v.j)
            << "  chi* = " << short_value(v.chi_star) << "\n";
    }
    json record = {{"D", discs[i]}, {"class_number", static_cast<long>(results[i].size())}, {"values", values}};
    out.lines.push_back(record);
    out.doc["results"].push_back(std::move(record));
  }
  out.table = table.str();
  return out;
}

// --------------------------------------------------------------- classpoly

Output run_classpoly(const RunConfig& config) {
  const std::vector<long> discs = requested_discriminants(config);
  PolyKind kind;
  try {
    kind = parse_poly_kind(config.kind);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto cache = open_cache(config);
  ClassPolyOptions options;
  options.cache = cache.get();
  const auto polys = parallel_map(discs.size(), config.workers, [&](std::size_t i) {
    ClassPolynomial p = class_polynomial(discs[i], kind, options);
    const bool irreducible = is_irreducible_over_q(p.poly);
    return std::make_pair(std::move(p), irreducible);
  });
  Output out;
  out.doc = {{"results", json::array()}};
  std::ostringstream table;
  for (const auto& [p, irreducible] : polys) {
    Integer den = 1;
    for (const auto& c : p.poly.coeffs()) den = lcm(den, Integer(c.get_den()));
    json record = {{"D", p.D},
                   {"kind", to_string(p.kind)},
                   {"class_number", class_number(p.D)},
                   {"degree", p.poly.degree()},
                   {"coeffs", poly_to_json(p.poly)},
                   {"monic", p.poly.is_monic()},
                   {"irreducible", irreducible},
                   {"denominator", integer_to_json(den)},
                   {"precision", p.precision},
                   {"from_cache", p.from_cache}};
    out.lines.push_back(record);
    out.doc["results"].push_back(std::move(record));
    table << std::setw(6) << p.D << "  h=" << p.poly.degree() << (irreducible ? "  irreducible  " : "  REDUCIBLE  ")
          << p.poly.to_string("X") << "\n";
  }
  out.table = table.str();
  return out;
}

// ----------------------------------------------------------- verify-bounds

std::string relation(const BoundCertificate& c) {
  if (c.lower) return c.strict ? ">" : ">=";
  return c.strict ? "<" : "<=";
}

json certificate_json(const BoundCertificate& c) {
  json steps = json::array();
  json errata = json::array();
  for (const auto& s : c.steps) {
    std::string rel = s.lower ? (s.strict ? ">" : ">=") : (s.strict ? "<" : "<=");
    steps.push_back({{"description", s.description},
                     {"lhs", interval_json(s.lhs)},
                     {"relation", rel},
                     {"rhs", to_string(s.rhs)},
                     {"holds", s.holds},
                     {"erratum", s.erratum}});
    if (s.erratum) errata.push_back(s.description);
  }
  return {{"name", c.name},     {"regime", to_string(c.regime)},
          {"claimed", to_string(c.claimed)}, {"relation", relation(c)},
          {"recomputed", interval_json(c.recomputed)}, {"pass", c.pass},
          {"errata", errata},   {"steps", steps}};
}

Output run_verify_bounds(const RunConfig& config) {
  Output out;
  bool pass = true;
  std::ostringstream table;
  table << std::left << std::setw(22) << "certificate" << std::setw(11) << "regime" << std::setw(14) << "claim"
        << std::setw(24) << "recomputed" << "result\n";
  json certs = json::array();
  for (const auto& c : all_certificates()) {
    pass = pass && c.pass;
    certs.push_back(certificate_json(c));
    out.lines.push_back({{"type", "certificate"}, {"certificate", certs.back()}});
    const BigFloat& shown = c.lower ? c.recomputed.lo() : c.recomputed.hi();
    table << std::setw(22) << c.name << std::setw(11) << to_string(c.regime) << std::setw(14)
          << relation(c) + " " + to_string(c.claimed)
          << std::setw(24) << shown.to_string(12) << (c.pass ? "PASS" : "FAIL") << (c.has_errata() ? " (errata)" : "")
          << "\n";
  }
  const RobinReport robin = robin_checks(config.robin_limit);
  pass = pass && robin.pass();
  json robin_doc = {{"limit", robin.limit},
                    {"checked", robin.checked},
                    {"failures", robin.failures},
                    {"reduction_steps", static_cast<long>(robin.reduction.size())},
                    {"pass", robin.pass()}};
  out.lines.push_back({{"type", "robin"}, {"robin", robin_doc}});
  table << "divisor-sum inequalities up to " << robin.limit << ": " << robin.checked << " checks, "
        << robin.failures.size() << " failures\n";
  json samples = json::array();
  for (Regime r : {Regime::ImAtLeast2, Regime::ImAtLeast1_5, Regime::LowStrip}) {
    if (config.samples == 0) break;
    const SampleReport s = sample_empirical(r, config.samples, config.seed);
    pass = pass && s.pass;
    samples.push_back({{"regime", to_string(r)},
                       {"count", s.count},
                       {"max_j_hat", s.max_j_hat},
                       {"max_chi_hat", s.max_chi_hat},
                       {"max_xi_hat", s.max_xi_hat},
                       {"j_bound", s.j_bound},
                       {"chi_bound", s.chi_bound},
                       {"xi_bound", s.xi_bound},
                       {"pass", s.pass}});
    out.lines.push_back({{"type", "samples"}, {"samples", samples.back()}});
    table << "sampled " << to_string(r) << ": max chi-hat " << s.max_chi_hat << " (bound " << s.chi_bound
          << "), max xi-hat " << s.max_xi_hat << " (bound " << s.xi_bound << ")" << (s.pass ? "" : " FAIL") << "\n";
  }
  out.doc = {{"certificates", certs}, {"robin", robin_doc}, {"samples", samples}, {"seed", config.seed}, {"pass", pass}};
  out.lines.push_back({{"type", "summary"}, {"pass", pass}});
  table << (pass ? "all certificates pass\n" : "FAILED\n");
  out.table = table.str();
  out.status = pass ? kExitOk : kExitFailed;
  return out;
}

// --------------------------------------------------------------- ao-search

json constants_json(const EffectiveConstants& c) {
  return {{"degree", c.degree},
          {"k", c.k},
          {"A", to_string(c.A)},
          {"height", integer_to_json(c.height)},
          {"height_a", to_string(c.height_a)},
          {"c1", c.c1.hi().to_string(12)},
          {"c2", c.c2.hi().to_string(12)},
          {"y1", c.y1.hi().to_string(12)},
          {"y2", c.y2.hi().to_string(12)},
          {"d_max", c.d_max},
          {"leading_term_shifted", c.leading_term_shifted},
          {"report", c.report}};
}

Output run_ao_search(const RunConfig& config) {
  const CurvePolynomial p = CurvePolynomial::from_json(read_json_file(config.poly_file));
  if (p.is_zero()) throw std::runtime_error(config.poly_file + ": the zero polynomial vanishes everywhere");
  const EffectiveConstants constants = derive_c1_c2(p);
  const auto cache = open_cache(config);
  SearchOptions options;
  options.d_max = config.d_max > 0 ? config.d_max : constants.d_max;
  options.workers = config.workers;
  options.cache = cache.get();
  const std::vector<SearchResult> results = ao_search(p, options);

  Output out;
  json head = {{"type", "constants"}, {"poly", p.to_string()}, {"d_max_derived", constants.d_max},
               {"d_max_used", options.d_max}, {"constants", constants_json(constants)}};
  out.lines.push_back(head);
  json points = json::array();
  std::set<long> zero_discs;
  std::size_t zeros = 0;
  std::size_t undetermined = 0;
  std::ostringstream table;
  table << "p = " << p.to_string() << ", derived D_max = " << constants.d_max << ", searched |D| <= " << options.d_max
        << "\n";
  for (const auto& r : results) {
    json point = {{"type", "point"},        {"D", r.D},
                  {"form", form_json(r.form)}, {"j", certified_json(r.j)},
                  {"chi_star", certified_json(r.chi_star)}, {"value", certified_json(r.value)},
                  {"verdict", to_string(r.verdict)}, {"witness", r.witness},
                  {"precision", r.precision}};
    out.lines.push_back(point);
    points.push_back(std::move(point));
    if (r.verdict == Verdict::ZeroConfirmed) {
      ++zeros;
      zero_discs.insert(r.D);
      table << "zero  D=" << r.D << " " << r.form.to_string() << "  " << r.witness << "\n";
    } else if (r.verdict == Verdict::Undetermined) {
      ++undetermined;
      table << "undetermined  D=" << r.D << " " << r.form.to_string() << "\n";
    }
  }
  json zero_list = json::array();
  for (auto it = zero_discs.rbegin(); it != zero_discs.rend(); ++it) zero_list.push_back(*it);
  json summary = {{"type", "summary"}, {"visited", results.size()}, {"zeros", zeros},
                  {"zero_discriminants", zero_list}, {"undetermined", undetermined}};
  out.lines.push_back(summary);
  out.doc = {{"constants", head}, {"points", points}, {"summary", summary}};
  table << results.size() << " points, " << zeros << " zeros, " << undetermined << " undetermined\n";
  out.table = table.str();
  if (config.strict && undetermined > 0) out.status = kExitFailed;
  return out;
}

// -------------------------------------------------------- collinear-search

json cm_point_json(const CMPoint& p) {
  json out = {{"D", p.D}, {"form", form_json(p.form)}, {"j", certified_json(p.j)}, {"chi_star", certified_json(p.chi_star)}};
  if (p.exact_j) out["exact_j"] = to_string(*p.exact_j);
  if (p.exact_chi_star) out["exact_chi_star"] = to_string(*p.exact_chi_star);
  return out;
}

json triple_json(const CollinearReport& report, const CollinearTriple& t) {
  json discs = json::array();
  for (std::size_t i : t.points) discs.push_back(report.points[i].D);
  json out = {{"points", t.points}, {"discs", discs}, {"det", certified_json(t.det)}, {"verdict", to_string(t.verdict)}};
  if (t.exact_det) out["exact_det"] = to_string(*t.exact_det);
  return out;
}

Output run_collinear_search(const RunConfig& config) {
  if (config.d_max <= 0) throw UsageError("collinear-search needs --dmax");
  const auto cache = open_cache(config);
  SearchOptions options;
  options.d_max = config.d_max;
  options.workers = config.workers;
  options.cache = cache.get();
  const CollinearReport report = collinear_search(options);

  Output out;
  json points = json::array();
  for (const auto& p : report.points) {
    points.push_back(cm_point_json(p));
    out.lines.push_back({{"type", "point"}, {"point", points.back()}});
  }
  json hits = json::array();
  std::size_t collinear = 0;
  std::size_t undetermined = 0;
  std::ostringstream table;
  for (const auto& t : report.hits) {
    hits.push_back(triple_json(report, t));
    out.lines.push_back({{"type", "hit"}, {"hit", hits.back()}});
    if (t.verdict == Collinearity::Collinear) ++collinear;
    if (t.verdict == Collinearity::Undetermined) ++undetermined;
    table << to_string(t.verdict) << "  " << hits.back()["discs"].dump() << "\n";
  }
  json summary = {{"type", "summary"},          {"d_max", report.d_max},   {"points", report.points.size()},
                  {"triples_tested", report.triples_tested}, {"collinear", collinear}, {"undetermined", undetermined}};
  out.lines.push_back(summary);
  out.doc = {{"points", points}, {"hits", hits}, {"summary", summary}};
  table << report.points.size() << " points, " << report.triples_tested << " triples, " << collinear << " collinear, "
        << undetermined << " undetermined\n";
  out.table = table.str();
  if (config.strict && undetermined > 0) out.status = kExitFailed;
  return out;
}

// ---------------------------------------------------------------- maps-det

json series_json(const FormalSeries& f, const ExpansionFrame& frame) {
  json terms = json::array();
  for (std::int64_t e = f.lead(); e < f.order(); ++e) {
    const UPoly c = f.coeff(e);
    if (c.is_zero()) continue;
    Rational q(e, frame.L);
    q.canonicalize();
    terms.push_back({{"q_exponent", to_string(q)}, {"coefficient", c.to_string()}});
  }
  Rational known(f.order(), frame.L);
  known.canonicalize();
  return {{"known_below_q", to_string(known)}, {"terms", terms}};
}

Output run_maps_det(const RunConfig& config) {
  const json input = read_json_file(config.maps_file);
  const auto cache = open_cache(config);
  Output out;
  std::ostringstream table;
  if (input.contains("maps")) {
    const auto& list = input.at("maps");
    if (!list.is_array() || list.size() != 6) throw std::runtime_error("maps-det: \"maps\" must hold six maps");
    std::array<ModularMap, 6> maps;
    for (std::size_t i = 0; i < 6; ++i) maps[i] = ModularMap::from_json(list[i]);
    const std::int64_t order = input.value("order", config.order > 0 ? config.order : std::int64_t{8});
    const SplitDeterminant s = split_determinant(maps, order, cache.get());
    const bool consistent = s.combined_vanishes == (s.holomorphic_vanishes && s.nonholomorphic_vanishes);
    out.doc = {{"mode", "split"},
               {"frame", {{"L", s.frame.L}, {"conductor", s.frame.conductor}}},
               {"combined", series_json(s.combined, s.frame)},
               {"holomorphic", series_json(s.holomorphic, s.frame)},
               {"nonholomorphic", series_json(s.nonholomorphic, s.frame)},
               {"combined_vanishes", s.combined_vanishes},
               {"holomorphic_vanishes", s.holomorphic_vanishes},
               {"nonholomorphic_vanishes", s.nonholomorphic_vanishes},
               {"consistent", consistent}};
    table << "combined " << (s.combined_vanishes ? "vanishes" : "nonzero") << ", holomorphic "
          << (s.holomorphic_vanishes ? "vanishes" : "nonzero") << ", nonholomorphic "
          << (s.nonholomorphic_vanishes ? "vanishes" : "nonzero") << " (known below t^" << s.known_order
          << ", t = q^(1/" << s.frame.L << "))\n";
    out.status = consistent ? kExitOk : kExitFailed;
  } else if (input.contains("pairs")) {
    const auto& list = input.at("pairs");
    if (!list.is_array() || list.size() != 3) throw std::runtime_error("maps-det: \"pairs\" must hold three pairs");
    std::vector<ConsistentPair> pairs;
    for (const auto& p : list) {
      if (!p.is_array() || p.size() != 2) throw std::runtime_error("maps-det: each pair is [j-map, chi-map]");
      pairs.emplace_back(ModularMap::from_json(p[0]), ModularMap::from_json(p[1]));
    }
    const std::int64_t order = input.value("order", config.order > 0 ? config.order : std::int64_t{4});
    const DominantCheck check = check_dominant_term({pairs[0], pairs[1], pairs[2]}, order, cache.get());
    const DominantTerm& d = check.predicted;
    json observed = nullptr;
    if (check.observed) {
      observed = {{"q_exponent", to_string(check.observed_q_exponent)},
                  {"coefficient", check.observed->coefficient.to_string()}};
    }
    out.doc = {{"mode", "dominant"},
               {"predicted",
                {{"coefficient", d.coefficient.to_string()},
                 {"q_exponent", to_string(d.q_exponent)},
                 {"u_power", d.u_power},
                 {"vanishes", d.vanishes},
                 {"equal_maps", d.equal_maps},
                 {"description", d.description}}},
               {"observed", observed},
               {"match", check.match}};
    table << "predicted q^" << to_string(d.q_exponent) << " * " << d.coefficient.to_string() << "\n"
          << "expansion " << (check.observed ? "q^" + to_string(check.observed_q_exponent) + " * " +
                                                   check.observed->coefficient.to_string()
                                             : std::string("zero to the known order"))
          << "\n"
          << (check.match ? "match\n" : "MISMATCH\n");
    out.status = check.match ? kExitOk : kExitFailed;
  } else {
    throw std::runtime_error("maps-det: expected \"maps\" or \"pairs\"");
  }
  out.table = table.str();
  return out;
}

OutputFormat default_format(const std::string& subcommand) {
  if (subcommand == "ao-search" || subcommand == "collinear-search") return OutputFormat::Jsonl;
  if (subcommand == "verify-bounds") return OutputFormat::Table;
  return OutputFormat::Json;
}

void emit(const Output& result, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::Json:
      out << result.doc.dump(2) << "\n";
      break;
    case OutputFormat::Jsonl:
      if (result.lines.empty()) {
        out << result.doc.dump() << "\n";
      } else {
        for (const auto& line : result.lines) out << line.dump() << "\n";
      }
      break;
    case OutputFormat::Table:
      out << result.table;
      break;
  }
}

void validate(const RunConfig& config) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), config.subcommand) == kSubcommands.end()) {
    throw UsageError("unknown subcommand '" + config.subcommand + "'");
  }
  if (config.workers < 1) throw UsageError("worker count must be at least 1");
  if (config.prec_bits < 64) throw UsageError("precision must be at least 64 bits");
  if (config.order < 0) throw UsageError("order must be non-negative");
  if (config.d_max < 0) throw UsageError("discriminant bound must be non-negative");
}

Output dispatch(const RunConfig& config) {
  const std::string& s = config.subcommand;
  if (s == "expand") return run_expand(config);
  if (s == "eval") return run_eval(config);
  if (s == "special") return run_special(config);
  if (s == "classpoly") return run_classpoly(config);
  if (s == "verify-bounds") return run_verify_bounds(config);
  if (s == "ao-search") return run_ao_search(config);
  if (s == "collinear-search") return run_collinear_search(config);
  return run_maps_det(config);
}

}  // namespace

ParseResult parse_args(int argc, const char* const* argv) {
  RunConfig config;
  CLI::App app{"Certified computations with j and the almost-holomorphic chi*", "chistar"};
  app.require_subcommand(1);
  std::string format_text;

  app.add_option("--prec-bits", config.prec_bits, "working precision in bits (>= 64)");
  app.add_option("--order", config.order, "expansion or truncation order (0: automatic)");
  app.add_option("--workers", config.workers, "worker threads");
  app.add_option("--cache-dir", config.cache_dir, "class polynomial cache (default: $CHISTAR_CACHE_DIR)");
  app.add_option("--format", format_text, "json, jsonl or table")->check(CLI::IsMember({"json", "jsonl", "table"}));
  app.add_option("--seed", config.seed, "seed for sampled checks");
  app.add_flag("--strict", config.strict, "treat undetermined verdicts as failures");
  app.add_option("--out", config.out, "write results here instead of stdout");

  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  auto* expand = sub("expand", "exact q-expansion");
  expand->add_option("--function", config.function, "j, chi, xi, chi-star, e2, e2-star, e4, e6, delta, eta-product");

  auto* eval = sub("eval", "certified value at a point");
  eval->add_option("--function", config.function, "j, chi, xi or chi-star");
  eval->add_option("--tau-re", config.tau_re, "real part (decimal)");
  eval->add_option("--tau-im", config.tau_im, "imaginary part (decimal, > 0)");

  auto* special = sub("special", "j and chi* at the CM points of given discriminants");
  special->add_option("--disc", config.discs, "discriminant (repeatable)")->allow_extra_args(false);
  special->add_option("--max-disc", config.d_max, "every discriminant with |D| <= N");

  auto* classpoly = sub("classpoly", "class polynomial of j or chi*");
  classpoly->add_option("--disc", config.discs, "discriminant (repeatable)")->allow_extra_args(false);
  classpoly->add_option("--max-disc", config.d_max, "every discriminant with |D| <= N");
  classpoly->add_option("--kind", config.kind, "j or chi-star")->check(CLI::IsMember({"j", "chi-star"}));

  auto* bounds = sub("verify-bounds", "replay the explicit tail bounds");
  bounds->add_option("--samples", config.samples, "random points per regime (0 skips sampling)");
  bounds->add_option("--robin-limit", config.robin_limit, "check divisor-sum inequalities up to N");

  auto* ao = sub("ao-search", "all CM points on p(j, chi*) = 0");
  ao->add_option("--poly", config.poly_file, "curve as JSON")->required();
  ao->add_option("--dmax-override", config.d_max, "search this bound instead of the derived one");

  auto* collinear = sub("collinear-search", "collinear triples of special points");
  collinear->add_option("--dmax", config.d_max, "largest |D|")->required();

  auto* maps = sub("maps-det", "collinearity determinant of modular maps");
  maps->add_option("--maps", config.maps_file, "maps as JSON")->required();

  // CLI11 takes mutable argv in some overloads; copy to be safe.
  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    ParseResult result;
    result.exit_code = code == 0 ? kExitOk : kExitUsage;
    result.message = out.str() + err.str();
    return result;
  }
  for (const auto* s : app.get_subcommands()) config.subcommand = s->get_name();
  if (format_text == "json") config.format = OutputFormat::Json;
  if (format_text == "jsonl") config.format = OutputFormat::Jsonl;
  if (format_text == "table") config.format = OutputFormat::Table;
  ParseResult result;
  result.config = config;
  return result;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const Output result = dispatch(config);
    emit(result, config.format.value_or(default_format(config.subcommand)), out);
    return result.status;
  } catch (const UsageError& e) {
    err << "chistar: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CacheCorruption& e) {
    err << "chistar: cache corruption: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "chistar: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int run(const RunConfig& config) {
  if (config.out.empty()) return run(config, std::cout, std::cerr);
  // buffer so a failed run leaves no partial file behind
  std::ostringstream buffer;
  const int status = run(config, buffer, std::cerr);
  if (status == kExitUsage || status == kExitRuntime) return status;
  std::ofstream file(config.out, std::ios::binary);
  if (!file) {
    std::cerr << "chistar: cannot write " << config.out << "\n";
    return kExitRuntime;
  }
  file << buffer.str();
  return status;
}

}  // namespace chistar::cli

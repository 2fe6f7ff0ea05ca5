#pragma once

// Replays the explicit tail-bound chains for the Eisenstein series, the
// discriminant, chi-hat, xi-hat and the principal-value gap with outward
// rounding. Each certificate lists its steps; a displayed step that is false
// is kept, marked as an erratum, and followed by a valid replacement so the
// final constant is still checked soundly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chistar/interval.hpp"

namespace chistar {

enum class Regime { ImAtLeast2, ImAtLeast1_5, LowStrip, FundamentalDomain };

std::string to_string(Regime regime);
/// Accepts "im>=2", "im>=1.5", "low-strip", "F".
Regime parse_regime(const std::string& text);

struct BoundStep {
  std::string description;
  Interval lhs;        // certified enclosure of the quantity being bounded
  Rational rhs;        // displayed bound
  bool lower = false;  // true: claims lhs >= rhs, false: claims lhs <= rhs
  bool strict = false;
  bool holds = false;
  bool erratum = false;  // the displayed step is false; a replacement follows
};

struct BoundCertificate {
  std::string name;  // e.g. "E2-tail", "chi-hat"
  Regime regime = Regime::FundamentalDomain;
  Rational claimed;
  Interval recomputed;  // bound produced by the (repaired) chain
  bool lower = false;   // the claim is recomputed >= claimed
  bool strict = false;
  bool pass = false;    // recomputed <= claimed (>= for lower claims)
  std::vector<BoundStep> steps;

  bool has_errata() const;
};

struct RobinReport {
  std::uint64_t limit = 0;
  std::uint64_t checked = 0;
  std::vector<std::string> failures;  // empty when every inequality held
  std::vector<BoundStep> reduction;   // analytic steps extending the range
  bool pass() const { return failures.empty(); }
};

/// sigma(n) < 8 n loglog n (4 <= n <= N), sigma(n) < 4 n loglog n (6 <= n <= N),
/// sigma_3(n) < 64 n^3 (loglog n)^3 and sigma_5(n) < 1024 n^5 (loglog n)^5
/// (4 <= n <= N), plus the reductions from Robin's inequality used for all n.
RobinReport robin_checks(std::uint64_t N);

/// |q| <= e^{-pi sqrt 3} < 0.005 on the fundamental domain.
BoundCertificate q_bound_certificate();

/// E2, E4, E6 tails: 25, 252, 1095.
std::vector<BoundCertificate> eisenstein_tail_constants();

/// |(E4^3 - 1)/q| < 2110 on the fundamental domain.
BoundCertificate e4_cubed_bound();

/// |1/(jq)| < 1.011 for Im >= 2.
BoundCertificate jq_bound();

/// |(Delta - q)/q^2|: 3340 (Im >= 2), 3700 (Im >= 1.5), 23546 (low strip).
/// FundamentalDomain is answered with the low-strip chain.
BoundCertificate delta_bound(Regime regime);

/// |q / Delta| < 1.5 on the low strip.
BoundCertificate eta_reciprocal_bound();

/// |1/(1 + q (Delta - q)/q^2)|: 1.02 (Im >= 2), 1.43 (Im >= 1.5).
BoundCertificate chi_prefactor_bound(Regime regime);

/// (chi-hat, xi-hat): (4808, 4782), (7299, 7258), (39960, 39032).
std::vector<BoundCertificate> chi_xi_tail_bounds(Regime regime);

/// 0.5 e^{pi sqrt 15} - e^{pi sqrt 15 / 2} - 90166 > 5595 and its inputs.
BoundCertificate gap_lemma_constants();

/// Every certificate above, in a fixed order.
std::vector<BoundCertificate> all_certificates();

struct SampleReport {
  Regime regime = Regime::FundamentalDomain;
  std::uint64_t count = 0;
  double max_j_hat = 0;
  double max_chi_hat = 0;
  double max_xi_hat = 0;
  double j_bound = 0;
  double chi_bound = 0;
  double xi_bound = 0;
  bool pass = true;
};

/// Deterministic random points of the regime; compares certified upper bounds
/// of |j-hat|, |chi-hat|, |xi-hat| with the regime's constants.
SampleReport sample_empirical(Regime regime, std::uint64_t count, std::uint64_t seed = 1);

}  // namespace chistar

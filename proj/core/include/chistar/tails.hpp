#pragma once

// Order-N truncation bounds for the q-series of the evaluator.
//
// For f = sum c_n q^n holomorphic on 0 < |q| < 1, Cauchy's estimate on the
// circle |q| = R gives |c_n| <= M(R) R^{-n} with M(R) = max_{|q|=R} |f|. Then
// for |q| <= r < R,
//
//     |sum_{n >= N} c_n q^n| <= M(R) (r/R)^N / (1 - r/R).
//
// M(R) is bounded by replacing every factor with its coefficient-wise
// majorant: 1 + |c| sum sigma_{k-1}(n) R^n for E_k, prod (1 - R^n)^{-24} for
// 1/prod(1 - q^n)^24, prod (1 + R^n)^24 for prod(1 - q^n)^24 and 1/R for q^{-1}.

#include <cstdint>
#include <string>

#include "chistar/interval.hpp"

namespace chistar {

enum class SeriesKind { E2, E4, E6, Delta, J, Chi, Xi };

std::string to_string(SeriesKind kind);

/// Radius of the Cauchy circle used by all majorants.
inline constexpr double kMajorantRadius = 0.25;

/// Certified upper bound of M(R) for the series kind at R = kMajorantRadius.
const Interval& circle_majorant(SeriesKind kind);

/// Upper bound of |sum_{n >= order} c_n q^n| for |q| <= r. Requires r < R.
Interval tail_bound(SeriesKind kind, std::int64_t order, const Interval& r);

/// Smallest order whose tail bound is at most 2^{-bits} (capped at max_order).
std::int64_t order_for_bits(SeriesKind kind, const Interval& r, long bits, std::int64_t max_order = 20000);

}  // namespace chistar

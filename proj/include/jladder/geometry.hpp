#pragma once

#include <vector>

#include "jladder/ladder.hpp"
#include "jladder/report.hpp"

namespace jladder {

/// How pi(t) is evaluated in the prime-counting comparison.
enum class PiMode { exact, asymptotic };

/// One report per property of the interval system:
///   2.3 phi^k(T) / T per k (measured epsilon in meta),
///   2.4 max_k |component k| against T / ((2n+5) ln T)   (hard),
///   2.5 min_k gap_k against 0.18 T / ln T               (hard),
///   2.7 |component k| / U per k,
///   2.8 gap_k / ((1-c) T / ln T) per k,
///   2.9 distance of components k-1 and k over (1-c) T / ln T per k,
///   6.1 (T - phi_1(T)) / ((1-c) pi(T)).
std::vector<RatioReport> geometry_report(const IntervalSystem& sys, PiMode pi_mode);

/// geometry_report over a T-sweep with U = T / ln^2 T, trend verdicts applied.
std::vector<RatioReport> geometry_sweep(const std::vector<double>& Ts, int n,
                                        const LadderTable& table, PiMode pi_mode);

}  // namespace jladder

#pragma once

#include <vector>

#include "jladder/ladder.hpp"
#include "jladder/report.hpp"
#include "jladder/selberg.hpp"

namespace jladder {

/// Knot spacing that keeps a table ending at t_max inside its validation
/// threshold 1e-7 * t_max.
double default_table_step(double t_max) noexcept;

/// A table covering every iterate phi^k(t), k <= depth, for t in [T, T+U].
/// step <= 0 selects default_table_step.
LadderTable covering_table(Ladder& ladder, double T, double U, int depth, double step = 0.0);

struct SuiteOptions {
  std::vector<double> sweep{1e4, 1e5, 1e6};
  /// Tolerance of the product integrals with more than two factors.
  double deep_rel_tol = 1e-5;
  bool with_tau = false;
};

/// The asymptotic ratios judged over a T-sweep, each at U = T / ln^2 T:
/// 1.3, 1.7, 6.10, 2.1 (n=1), 2.7 and 2.8 (n=1, per k), 3.7 ({2,2,2} of 6),
/// 3.8 ({2,2,2} against {3,3}), 4.4 (n=1) and 4.7 (n=1). Trend verdicts are
/// applied before returning.
std::vector<RatioReport> trend_suite(Ladder& ladder, const SuiteOptions& opts);

/// Diagnostics that are emitted but never asserted: 1.8 at the smallest
/// sweep point, 5.5, 5.7 and 5.8 on every sweep point up to 1e5, and the TKA
/// residuals at deltas {0.05, 0.02, 0.01}.
std::vector<RatioReport> diagnostic_suite(Ladder& ladder, const std::vector<double>& sweep);

}  // namespace jladder

#include "jladder/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "jladder/constants.hpp"
#include "jladder/primes.hpp"

namespace jladder {

namespace {

RatioReport base(const IntervalSystem& sys, const char* id, int k = -1) {
  RatioReport r;
  r.formula_id = id;
  r.T = sys.T;
  r.U = sys.U;
  r.n = sys.n;
  r.F = "-";
  r.k = k;
  return r;
}

}  // namespace

std::vector<RatioReport> geometry_report(const IntervalSystem& sys, PiMode pi_mode) {
  std::vector<RatioReport> out;
  const double T = sys.T, lnT = std::log(T);
  const double scale = T / lnT;
  const int n = sys.n;
  const bool macroscopic = sys.U >= std::pow(T, 1.0 / 3.0) && sys.U <= max_window(T) * (1 + 1e-12);

  for (int k = 1; k <= n + 1; ++k) {
    RatioReport r = base(sys, "2.3", k);
    r.lhs = sys.endpoints[k].first;
    r.rhs = T;
    finish(r);
    r.meta["epsilon_measured"] = 1.0 - r.ratio;
    out.push_back(r);
  }

  {
    RatioReport r = base(sys, "2.4");
    r.kind = ReportKind::hard;
    double worst = 0.0;
    for (int k = 1; k <= n + 1; ++k) worst = std::max(worst, sys.lengths[k]);
    r.lhs = worst;
    r.rhs = scale / (2.0 * n + 5.0);
    r.meta["lengths"] = sys.lengths;
    finish(r, r.lhs < r.rhs);
    out.push_back(r);
  }
  {
    RatioReport r = base(sys, "2.5");
    r.kind = ReportKind::hard;
    r.lhs = *std::min_element(sys.gaps.begin(), sys.gaps.end());
    r.rhs = 0.18 * scale;
    r.meta["gaps"] = sys.gaps;
    finish(r, r.lhs > r.rhs);
    out.push_back(r);
  }

  for (int k = 1; k <= n + 1; ++k) {
    RatioReport r = base(sys, "2.7", k);
    r.lhs = sys.lengths[k];
    r.rhs = sys.U;
    r.meta["macroscopic"] = macroscopic;
    finish(r);
    out.push_back(r);
  }
  for (int k = 0; k <= n; ++k) {
    RatioReport r = base(sys, "2.8", k);
    r.lhs = sys.gaps[k];
    r.rhs = (1.0 - kEulerC) * scale;
    r.meta["macroscopic"] = macroscopic;
    finish(r);
    out.push_back(r);
  }
  for (int k = 1; k <= n + 1; ++k) {
    RatioReport r = base(sys, "2.9", k);
    // The components are ordered right to left, so the distance between
    // component k-1 and component k is the gap below component k-1.
    r.lhs = sys.endpoints[k - 1].first - sys.endpoints[k].second;
    r.rhs = (1.0 - kEulerC) * scale;
    r.meta["macroscopic"] = macroscopic;
    finish(r);
    out.push_back(r);
  }
  {
    RatioReport r = base(sys, "6.1");
    const PrimeCount pc = pi_mode == PiMode::exact ? prime_pi(T) : PrimeCount{T / lnT, false};
    r.lhs = T - sys.endpoints[1].first;
    r.rhs = (1.0 - kEulerC) * pc.value;
    r.F = pi_mode == PiMode::exact ? "pi:exact" : "pi:asymptotic";
    r.meta["pi"] = pc.value;
    r.meta["pi_exact"] = pc.exact;
    finish(r);
    out.push_back(r);
  }
  return out;
}

std::vector<RatioReport> geometry_sweep(const std::vector<double>& Ts, int n,
                                        const LadderTable& table, PiMode pi_mode) {
  std::vector<RatioReport> all;
  for (double T : Ts) {
    const IntervalSystem sys = interval_system(T, max_window(T), n, table);
    for (auto& r : geometry_report(sys, pi_mode)) all.push_back(std::move(r));
  }
  apply_trends(all);
  sort_reports(all);
  return all;
}

}  // namespace jladder

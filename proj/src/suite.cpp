#include "jladder/suite.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "jladder/constants.hpp"
#include "jladder/geometry.hpp"
#include "jladder/partitions.hpp"
#include "jladder/verify.hpp"

namespace jladder {

double default_table_step(double t_max) noexcept {
  if (t_max <= 2e4) return 0.02;
  if (t_max <= 2e5) return 0.05;
  return 0.125;
}

LadderTable covering_table(Ladder& ladder, double T, double U, int depth, double step) {
  if (depth < 0 || depth > kMaxIterate) throw std::invalid_argument("covering_table: bad depth");
  const double hi = T + U + 1.0;
  // A small margin below the deepest iterate keeps inverse() and the
  // chain-rule stencils inside the table.
  const double lo = std::max(kDomainFloor, ladder.phi1_iter(T, depth) - 2.0);
  return build_table(ladder, lo, hi, step > 0.0 ? step : default_table_step(hi));
}

std::vector<RatioReport> trend_suite(Ladder& ladder, const SuiteOptions& opts) {
  std::vector<RatioReport> out;
  const WeightFunction one = WeightFunction::one();
  const ProperPartition p222 = make_partition(6, {2, 2, 2});
  const ProperPartition p33 = make_partition(6, {3, 3});
  for (double T : opts.sweep) {
    const double U = theorem_window(T);
    const LadderTable table = covering_table(ladder, T, U, 6);
    const auto add = [&](RatioReport r) { out.push_back(std::move(r)); };

    add(global_hl_ratio(T, ladder.store()));
    for (auto& r : hl_window_ratio(T, U, table)) add(r);
    add(theorem_ratio(T, U, 1, one, table));
    for (auto& r : geometry_report(interval_system(T, U, 1, table), PiMode::exact)) add(r);
    add(factorization_ratio(p222, T, U, one, table, opts.deep_rel_tol));
    add(cross_partition_ratio(p222, p33, T, U, table, opts.deep_rel_tol));
    add(full_factorization_ratio(T, U, 1, one, table, &ladder.store()));
    add(degenerate_factorization_ratio(T, U, 1, 0, one, table));
    if (opts.with_tau) add(tau_witness(T, U, table).report);
  }
  apply_trends(out);
  sort_reports(out);
  return out;
}

std::vector<RatioReport> diagnostic_suite(Ladder& ladder, const std::vector<double>& sweep) {
  std::vector<RatioReport> out;
  if (sweep.empty()) return out;

  {
    const double T = sweep.front();
    const double U1 = std::pow(T, 7.0 / 8.0);
    const LadderTable table = covering_table(ladder, T, U1, 1);
    out.push_back(sixth_order_ratio(T, table));
  }

  std::vector<double> small;
  for (double T : sweep)
    if (T <= 1e5) small.push_back(T);
  if (!small.empty()) {
    const double top = small.back() + selberg_window(small.back()) + 1.0;
    const auto selberg = std::make_shared<const SelbergTable>(top);
    for (double T : small) {
      const double U = selberg_window(T);
      const LadderTable table = covering_table(ladder, T, U, 2);
      out.push_back(selberg_gen_ratio(T, U, 1, 1, SelbergWhich::S, table, selberg));
      out.push_back(selberg_gen_ratio(T, U, 1, 1, SelbergWhich::S1, table, selberg));
      // The minimal formulae are the n = 0, l = 1 instances.
      for (auto which : {SelbergWhich::S, SelbergWhich::S1}) {
        RatioReport r = selberg_gen_ratio(T, U, 0, 1, which, table, selberg);
        r.meta["instance_of"] = r.formula_id;
        r.formula_id = "5.8";
        out.push_back(r);
      }
    }
  }

  for (auto& r : tka_reports({0.05, 0.02, 0.01})) out.push_back(r);
  sort_reports(out);
  return out;
}

}  // namespace jladder

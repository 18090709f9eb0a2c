#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace jladder {

/// How a report is judged.
enum class ReportKind {
  trend,       ///< asymptotic relation, judged over a T-sweep
  hard,        ///< explicit inequality or exact identity
  diagnostic,  ///< emitted, never asserted
};

/// Verdict strings written to the `verdict` column.
namespace verdict {
inline constexpr const char* kPass = "pass";
inline constexpr const char* kFail = "fail";
inline constexpr const char* kTrendPass = "trend-pass";
inline constexpr const char* kTrendFail = "trend-fail";
inline constexpr const char* kTrendPending = "trend-pending";
inline constexpr const char* kDiagnostic = "diagnostic";
}  // namespace verdict

struct RatioReport {
  std::string formula_id;
  double T = 0.0;
  double U = 0.0;
  int n = 0;
  std::string F = "one";
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  ReportKind kind = ReportKind::trend;
  std::string verdict = verdict::kTrendPending;
  /// Sub-index for formulas reported once per iterate (k) or per l.
  int k = -1;
  nlohmann::json meta = nlohmann::json::object();

  bool passed() const noexcept;
};

/// Fills ratio = lhs / rhs (NaN when rhs == 0) and the default verdict for
/// the kind. For hard reports `ok` decides pass or fail.
void finish(RatioReport& r, bool ok = true);

/// Trend verdict for one sequence ordered by increasing T: the final ratio
/// lies in [0.4, 2.5] and |ratio - 1| did not grow at the last step.
bool trend_ok(const std::vector<double>& ratios);

inline constexpr double kTrendLow = 0.4;
inline constexpr double kTrendHigh = 2.5;

/// Groups trend reports by (formula_id, n, F, k), orders each group by T and
/// writes the trend verdict into every member. Groups with a single point
/// stay pending. Returns false when some group fails.
bool apply_trends(std::vector<RatioReport>& reports);

/// Sort in (formula_id, T, n, F, k) order.
void sort_reports(std::vector<RatioReport>& reports);

/// CSV with columns formula_id,T,U,n,F,lhs,rhs,ratio,verdict.
void write_csv(std::ostream& out, const std::vector<RatioReport>& reports);
nlohmann::json to_json(const RatioReport& r);
nlohmann::json to_json(const std::vector<RatioReport>& reports);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace jladder

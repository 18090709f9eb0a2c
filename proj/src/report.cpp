#include "jladder/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

namespace jladder {

bool RatioReport::passed() const noexcept {
  return verdict != verdict::kFail && verdict != verdict::kTrendFail;
}

void finish(RatioReport& r, bool ok) {
  r.ratio = r.rhs != 0.0 ? r.lhs / r.rhs : std::numeric_limits<double>::quiet_NaN();
  switch (r.kind) {
    case ReportKind::hard:
      r.verdict = ok ? verdict::kPass : verdict::kFail;
      break;
    case ReportKind::trend:
      r.verdict = verdict::kTrendPending;
      break;
    case ReportKind::diagnostic:
      r.verdict = verdict::kDiagnostic;
      break;
  }
}

bool trend_ok(const std::vector<double>& ratios) {
  if (ratios.empty()) return false;
  const double last = ratios.back();
  if (!(last >= kTrendLow && last <= kTrendHigh)) return false;
  if (ratios.size() < 2) return true;
  const double prev = ratios[ratios.size() - 2];
  return std::fabs(last - 1.0) <= std::fabs(prev - 1.0);
}

bool apply_trends(std::vector<RatioReport>& reports) {
  using Key = std::tuple<std::string, int, std::string, int>;
  std::map<Key, std::vector<RatioReport*>> groups;
  for (auto& r : reports)
    if (r.kind == ReportKind::trend) groups[{r.formula_id, r.n, r.F, r.k}].push_back(&r);
  bool all = true;
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const RatioReport* a, const RatioReport* b) { return a->T < b->T; });
    if (members.size() < 2) {
      members.front()->verdict = verdict::kTrendPending;
      continue;
    }
    std::vector<double> ratios;
    for (const auto* r : members) ratios.push_back(r->ratio);
    const bool ok = trend_ok(ratios);
    all = all && ok;
    for (auto* r : members) r->verdict = ok ? verdict::kTrendPass : verdict::kTrendFail;
  }
  return all;
}

void sort_reports(std::vector<RatioReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const RatioReport& a, const RatioReport& b) {
    return std::tie(a.formula_id, a.T, a.n, a.F, a.k) < std::tie(b.formula_id, b.T, b.n, b.F, b.k);
  });
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<RatioReport>& reports) {
  out << "formula_id,T,U,n,F,lhs,rhs,ratio,verdict\n";
  for (const auto& r : reports) {
    std::string id = r.formula_id;
    if (r.k >= 0) id += "[k=" + std::to_string(r.k) + "]";
    out << id << ',' << format_double(r.T) << ',' << format_double(r.U) << ',' << r.n << ',' << r.F
        << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
        << format_double(r.ratio) << ',' << r.verdict << '\n';
  }
}

nlohmann::json to_json(const RatioReport& r) {
  nlohmann::json j;
  j["formula_id"] = r.formula_id;
  j["T"] = r.T;
  j["U"] = r.U;
  j["n"] = r.n;
  j["F"] = r.F;
  if (r.k >= 0) j["k"] = r.k;
  // JSON has no NaN; non-finite values are written as null.
  const auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); };
  j["lhs"] = num(r.lhs);
  j["rhs"] = num(r.rhs);
  j["ratio"] = num(r.ratio);
  j["verdict"] = r.verdict;
  j["meta"] = r.meta;
  return j;
}

nlohmann::json to_json(const std::vector<RatioReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

}  // namespace jladder

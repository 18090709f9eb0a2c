#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "json.hpp"

#include "jladder/constants.hpp"
#include "jladder/ladder.hpp"

namespace jladder {

namespace {

// 7-point Gauss-Legendre on [-1, 1].
constexpr double kGlX[7] = {-0.949107912342758524526189684047851, -0.741531185599394439863864773280788,
                            -0.405845151377397166906606412076961, 0.0,
                            0.405845151377397166906606412076961,  0.741531185599394439863864773280788,
                            0.949107912342758524526189684047851};
constexpr double kGlW[7] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                            0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
                            0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
                            0.129484966168869693270611432679082};

double gl7_z2(double a, double b) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 7; ++i) s += kGlW[i] * abs_zeta_sq(c + r * kGlX[i]);
  return s * r;
}

std::string now_iso() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Cubic Hermite on the unit interval: value and s-derivative.
inline double hermite(double p0, double p1, double m0, double m1, double s) {
  const double s2 = s * s, s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * p0 + (s3 - 2.0 * s2 + s) * m0 + (-2.0 * s3 + 3.0 * s2) * p1 +
         (s3 - s2) * m1;
}

inline double hermite_ds(double p0, double p1, double m0, double m1, double s) {
  const double s2 = s * s;
  return (6.0 * s2 - 6.0 * s) * p0 + (3.0 * s2 - 4.0 * s + 1.0) * m0 + (-6.0 * s2 + 6.0 * s) * p1 +
         (3.0 * s2 - 2.0 * s) * m1;
}

// Minimum over s in [0, 1] of the Hermite s-derivative.
double min_slope(double p0, double p1, double m0, double m1) {
  const double d = p1 - p0;
  const double qa = 3.0 * m0 + 3.0 * m1 - 6.0 * d;
  const double qb = -4.0 * m0 - 2.0 * m1 + 6.0 * d;
  double best = std::min(m0, m1);
  if (qa > 0.0) {
    const double s = -qb / (2.0 * qa);
    if (s > 0.0 && s < 1.0) best = std::min(best, m0 + qb * s + qa * s * s);
  }
  return best;
}

}  // namespace

double LadderTable::knot(std::size_t i) const noexcept {
  if (i + 1 >= phi_.size()) return t_max_;
  return t_min_ + double(i) * h_;
}

std::size_t LadderTable::limited_intervals() const noexcept {
  return static_cast<std::size_t>(std::count(limited_.begin(), limited_.end(), std::uint8_t{1}));
}

std::size_t LadderTable::interval(double t) const {
  if (!(t >= t_min_ && t <= t_max_) || phi_.size() < 2)
    throw DomainError("ladder table: t outside [t_min, t_max]");
  const auto last = phi_.size() - 2;
  const auto i = static_cast<std::size_t>(std::floor((t - t_min_) / h_));
  return std::min(i, last);
}

std::pair<double, double> LadderTable::slopes(std::size_t i) const {
  double d0 = dphi_[i], d1 = dphi_[i + 1];
  if (limited_[i] != 0) {
    const double delta = (phi_[i + 1] - phi_[i]) / h_;
    const double a = d0 / delta, b = d1 / delta;
    const double tau = 3.0 / std::sqrt(a * a + b * b);
    d0 *= tau;
    d1 *= tau;
  }
  return {d0, d1};
}

void LadderTable::finalize_limits() {
  limited_.assign(phi_.size() - 1, 0);
  for (std::size_t i = 0; i + 1 < phi_.size(); ++i) {
    const double delta = (phi_[i + 1] - phi_[i]) / h_;
    const double a = dphi_[i] / delta, b = dphi_[i + 1] / delta;
    if (a * a + b * b <= 9.0) continue;
    if (min_slope(phi_[i], phi_[i + 1], h_ * dphi_[i], h_ * dphi_[i + 1]) < 0.0) limited_[i] = 1;
  }
}

double LadderTable::phi(double t) const {
  const std::size_t i = interval(t);
  const double s = (t - knot(i)) / h_;
  const auto [d0, d1] = slopes(i);
  return hermite(phi_[i], phi_[i + 1], h_ * d0, h_ * d1, s);
}

double LadderTable::phi_slope(double t) const {
  const std::size_t i = interval(t);
  const double s = (t - knot(i)) / h_;
  const auto [d0, d1] = slopes(i);
  return hermite_ds(phi_[i], phi_[i + 1], h_ * d0, h_ * d1, s) / h_;
}

double LadderTable::derivative(double t) const { return ladder_derivative(t, phi(t)); }

double LadderTable::iter(double t, int k) const {
  if (k < 0 || k > kMaxIterate) throw std::invalid_argument("iter: k outside [0, 12]");
  double x = t;
  for (int j = 0; j < k; ++j) {
    if (!covers(x))
      throw DomainError("ladder table: iterate " + std::to_string(j) + " at " + std::to_string(x) +
                        " left the table range");
    x = phi(x);
  }
  return x;
}

double LadderTable::inverse(double y) const {
  if (!(y >= phi_.front() && y <= phi_.back())) throw DomainError("ladder table: inverse outside range");
  auto it = std::upper_bound(phi_.begin(), phi_.end(), y);
  std::size_t i = it == phi_.begin() ? 0 : static_cast<std::size_t>(it - phi_.begin()) - 1;
  i = std::min(i, phi_.size() - 2);
  const auto [d0, d1] = slopes(i);
  const double m0 = h_ * d0, m1 = h_ * d1;
  double lo = 0.0, hi = 1.0;
  double s = phi_[i + 1] > phi_[i] ? (y - phi_[i]) / (phi_[i + 1] - phi_[i]) : 0.0;
  for (int it2 = 0; it2 < 100 && hi - lo > 1e-16; ++it2) {
    const double f = hermite(phi_[i], phi_[i + 1], m0, m1, s) - y;
    if (f == 0.0) break;
    if (f < 0.0)
      lo = s;
    else
      hi = s;
    const double fp = hermite_ds(phi_[i], phi_[i + 1], m0, m1, s);
    double next = fp > 0.0 ? s - f / fp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - s) < 1e-16) {
      s = next;
      break;
    }
    s = next;
  }
  return knot(i) + s * h_;
}

LadderTable build_table(Ladder& ladder, double t_min, double t_max, double step) {
  if (!(t_min >= kDomainFloor)) throw DomainError("build_table: t_min below the domain floor");
  if (!(t_max > t_min)) throw std::invalid_argument("build_table: need t_min < t_max");
  if (!(step > 0.0)) throw std::invalid_argument("build_table: step must be positive");

  LadderTable tab;
  const auto n_int = static_cast<std::size_t>(std::ceil((t_max - t_min) / step));
  tab.t_min_ = t_min;
  tab.t_max_ = t_max;
  tab.h_ = (t_max - t_min) / double(n_int);
  tab.c0_ = ladder.c0();
  const std::size_t n = n_int + 1;
  tab.phi_.assign(n, 0.0);
  tab.dphi_.assign(n, 0.0);
  tab.hl_.assign(n, 0.0);
  std::vector<double> mid_phi(n_int, 0.0);

  // Knots are grouped by the canonical checkpoint at or below them; each
  // group accumulates A from its checkpoint, so groups are independent and
  // the result does not depend on scheduling.
  const double step_c = HlStore::kCheckpointStep;
  ladder.store().ensure(t_max);
  struct Group {
    std::size_t first, last;  // knot range [first, last)
    double base_t, base_a;
  };
  std::vector<Group> groups;
  {
    std::size_t i = 0;
    while (i < n) {
      const double t0 = tab.knot(i);
      const double cp = std::floor(t0 / step_c) * step_c;
      const double next_cp = cp + step_c;
      std::size_t j = i;
      while (j < n && tab.knot(j) < next_cp) ++j;
      const bool first_group = groups.empty();
      const double base_t = first_group ? t0 : cp;
      groups.push_back({i, j, base_t, ladder.hl(base_t)});
      i = j;
    }
  }

  const double c0 = tab.c0_;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t g = 0; g < static_cast<std::ptrdiff_t>(groups.size()); ++g) {
    const Group& gr = groups[g];
    double t_prev = gr.base_t, a = gr.base_a;
    for (std::size_t i = gr.first; i < gr.last; ++i) {
      const double t = tab.knot(i);
      if (t > t_prev) a += gl7_z2(t_prev, t);
      tab.hl_[i] = a;
      tab.phi_[i] = solve_v(a, c0);
      tab.dphi_[i] = ladder_derivative(t, tab.phi_[i]);
      if (i + 1 < n) {
        const double m = t + 0.5 * tab.h_;
        a += gl7_z2(t, m);
        mid_phi[i] = solve_v(a, c0);
        t_prev = m;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double t = tab.knot(i);
    if (!(tab.phi_[i] < t)) throw DomainError("build_table: phi_1(t) >= t at t = " + std::to_string(t));
    if (i > 0 && !(tab.phi_[i] > tab.phi_[i - 1]))
      throw DomainError("build_table: phi_1 not increasing at t = " + std::to_string(t));
  }
  tab.finalize_limits();

  double worst = 0.0, worst_t = t_min;
  for (std::size_t i = 0; i < n_int; ++i) {
    const double m = tab.knot(i) + 0.5 * tab.h_;
    const double err = std::fabs(tab.phi(m) - mid_phi[i]);
    if (err > worst) {
      worst = err;
      worst_t = m;
    }
  }
  tab.max_interp_err_ = worst;
  tab.worst_mid_ = worst_t;
  if (worst > 1e-7 * t_max)
    throw DomainError("build_table: interpolation error " + std::to_string(worst) + " at t = " +
                      std::to_string(worst_t) + " exceeds 1e-7 * t_max; use a smaller step");
  tab.built_ = now_iso();
  return tab;
}

void save_table(const LadderTable& table, const std::filesystem::path& path) {
  nlohmann::json j;
  j["version"] = LadderTable::kVersion;
  j["t_min"] = table.t_min_;
  j["t_max"] = table.t_max_;
  j["step"] = table.h_;
  j["c0"] = table.c0_;
  j["max_interp_err"] = table.max_interp_err_;
  j["worst_midpoint"] = table.worst_mid_;
  j["built"] = table.built_;
  std::vector<double> knots(table.size());
  for (std::size_t i = 0; i < knots.size(); ++i) knots[i] = table.knot(i);
  j["knots"] = knots;
  j["phi_values"] = table.phi_;
  j["derivatives"] = table.dphi_;
  j["hl_values"] = table.hl_;
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump();
    if (!out) throw std::runtime_error("cannot write table " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

LadderTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table " + path.string());
  const nlohmann::json j = nlohmann::json::parse(in);
  if (j.at("version").get<int>() != LadderTable::kVersion)
    throw std::runtime_error("unsupported table version in " + path.string());
  LadderTable t;
  t.t_min_ = j.at("t_min").get<double>();
  t.t_max_ = j.at("t_max").get<double>();
  t.h_ = j.at("step").get<double>();
  t.c0_ = j.at("c0").get<double>();
  t.max_interp_err_ = j.at("max_interp_err").get<double>();
  t.worst_mid_ = j.value("worst_midpoint", 0.0);
  t.built_ = j.value("built", std::string{});
  t.phi_ = j.at("phi_values").get<std::vector<double>>();
  t.dphi_ = j.at("derivatives").get<std::vector<double>>();
  t.hl_ = j.at("hl_values").get<std::vector<double>>();
  const auto knots = j.at("knots").get<std::vector<double>>();
  const std::size_t n = t.phi_.size();
  if (n < 2 || knots.size() != n || t.dphi_.size() != n || t.hl_.size() != n)
    throw std::runtime_error("table arrays have inconsistent lengths in " + path.string());
  for (std::size_t i = 0; i < n; ++i) {
    if (knots[i] != t.knot(i)) throw std::runtime_error("table knots are not uniform in " + path.string());
    if (i > 0 && !(t.phi_[i] > t.phi_[i - 1]))
      throw std::runtime_error("table phi values not increasing in " + path.string());
  }
  t.finalize_limits();
  return t;
}

}  // namespace jladder

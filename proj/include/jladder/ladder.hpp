#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "jladder/integrate.hpp"
#include "jladder/zeta.hpp"

namespace jladder {

/// Deepest iterate phi_1^k that may be requested.
inline constexpr int kMaxIterate = 12;

/// Raised when A(T) is too small for the defining equation to have a root
/// above 2 pi (T below the domain floor).
class NoBracketError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Left side of the defining equation, V ln V + (c - ln 2 pi) V + c0.
double ladder_lhs(double v, double c0) noexcept;

/// 1 + c - ln 2 pi + ln v, the slope of ladder_lhs in v.
double ladder_slope(double v) noexcept;

/// The root V > 2 pi of ladder_lhs(V, c0) = a, to machine precision.
double solve_v(double a, double c0);

/// Z(t)^2 / ladder_slope(phi): the derivative of phi_1 at t given phi_1(t).
double ladder_derivative(double t, double phi) noexcept;

/// Direct evaluation of phi_1 from the checkpointed A(T).
class Ladder {
 public:
  explicit Ladder(HlStore& store, double c0 = 0.0);

  double c0() const noexcept { return c0_; }
  HlStore& store() noexcept { return store_; }

  /// A(T) from the store (not recorded in the checkpoint grid).
  double hl(double T);
  /// phi_1(T); T >= kDomainFloor.
  double phi1(double T);
  /// phi_1^k(t) by repeated direct evaluation.
  double phi1_iter(double t, int k);
  /// d phi_1 / dt by implicit differentiation of the defining equation.
  double derivative(double t);

 private:
  HlStore& store_;
  double c0_;
};

/// Uniform-knot piecewise cubic Hermite interpolant of phi_1, using the
/// exact derivative at every knot. Where the cubic on an interval would not
/// be monotone the Fritsch-Carlson scaling is applied to that interval.
/// Immutable after construction.
class LadderTable {
 public:
  static constexpr int kVersion = 1;

  LadderTable() = default;

  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }
  double step() const noexcept { return h_; }
  double c0() const noexcept { return c0_; }
  double max_interp_err() const noexcept { return max_interp_err_; }
  /// Location of the worst midpoint found during validation.
  double worst_midpoint() const noexcept { return worst_mid_; }
  std::size_t size() const noexcept { return phi_.size(); }
  std::size_t limited_intervals() const noexcept;
  const std::string& built() const noexcept { return built_; }

  double knot(std::size_t i) const noexcept;
  const std::vector<double>& phi_values() const noexcept { return phi_; }
  const std::vector<double>& derivatives() const noexcept { return dphi_; }
  const std::vector<double>& hl_values() const noexcept { return hl_; }

  bool covers(double t) const noexcept { return t >= t_min_ && t <= t_max_; }
  /// Interpolated phi_1(t). Throws DomainError outside [t_min, t_max].
  double phi(double t) const;
  /// Slope of the interpolant.
  double phi_slope(double t) const;
  /// Z(t)^2 / ladder_slope(phi(t)), the exact derivative formula evaluated
  /// at the interpolated phi.
  double derivative(double t) const;
  /// phi_1^k(t); k = 0 returns t. Throws DomainError when an iterate leaves
  /// the table (underflow below t_min).
  double iter(double t, int k) const;
  /// The t with phi(t) = y.
  double inverse(double y) const;

  friend LadderTable build_table(Ladder& ladder, double t_min, double t_max, double step);
  friend void save_table(const LadderTable& table, const std::filesystem::path& path);
  friend LadderTable load_table(const std::filesystem::path& path);

 private:
  std::size_t interval(double t) const;
  // Hermite end slopes of interval i after monotonicity scaling.
  std::pair<double, double> slopes(std::size_t i) const;
  void finalize_limits();

  double t_min_ = 0.0;
  double t_max_ = 0.0;
  double h_ = 0.0;
  double c0_ = 0.0;
  double max_interp_err_ = 0.0;
  double worst_mid_ = 0.0;
  std::string built_;
  std::vector<double> phi_;
  std::vector<double> dphi_;
  std::vector<double> hl_;
  std::vector<std::uint8_t> limited_;
};

/// Tabulate phi_1 on [t_min, t_max] with knot spacing at most `step`.
/// Every interval midpoint is checked against a direct solve; the build is
/// rejected when the worst error exceeds 1e-7 * t_max.
LadderTable build_table(Ladder& ladder, double t_min, double t_max, double step);

void save_table(const LadderTable& table, const std::filesystem::path& path);
LadderTable load_table(const std::filesystem::path& path);

/// Components [phi^k(T), phi^k(T+U)], k = 0..n+1, of the disconnected set.
struct IntervalSystem {
  double T = 0.0;
  double U = 0.0;
  int n = 0;
  std::vector<std::pair<double, double>> endpoints;
  std::vector<double> lengths;  ///< k = 0..n+1
  std::vector<double> gaps;     ///< phi^k(T) - phi^{k+1}(T+U), k = 0..n
  bool disjoint = false;
};

/// Largest admissible window length, T / ln^2 T.
double max_window(double T) noexcept;

/// Throws DomainError unless 0 < U <= T / ln^2 T.
IntervalSystem interval_system(double T, double U, int n, const LadderTable& table);

}  // namespace jladder

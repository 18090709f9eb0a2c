#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace jladder {

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;  ///< absolute, >= 0
  std::size_t evals = 0;
};

/// Thrown when some panel could not meet its tolerance within the depth
/// limit. Carries the best available estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadResult& best() const noexcept { return best_; }

 private:
  QuadResult best_;
};

using RealFn = std::function<double(double)>;

struct QuadOptions {
  /// Upper bound on the initial panel width at abscissa t; empty means the
  /// whole interval (or each breakpoint piece) starts as one panel.
  RealFn max_width;
  /// Points where the integrand may be discontinuous; panels never straddle them.
  std::vector<double> breakpoints;
  /// Absolute error floor per unit length.
  double abs_floor = 1e-12;
  int max_depth = 40;
  /// Bisection budget, counted per initial panel.
  int max_splits = 2000;
};

/// Panel rule for integrands built from `factors` factors of Z(.)^2:
/// initial panels no wider than oscillation_scale(t) / factors.
QuadOptions z_panels(int factors = 1);

/// One 21-point Gauss-Kronrod panel with the QUADPACK error estimate.
/// `abs_value` receives the integral of |f|.
QuadResult gauss_kronrod21(const RealFn& f, double a, double b, double* abs_value = nullptr);

/// Adaptive Gauss-Kronrod quadrature. The panel with the largest error
/// estimate is bisected until the total estimate is at most
/// max(rel_tol * int|f|, abs_floor * (b - a)). Panel results are combined in
/// position order with compensated summation, so the result does not depend
/// on the number of threads.
QuadResult integrate_adaptive(const RealFn& f, double a, double b, double rel_tol,
                              const QuadOptions& opts = {});

/// Neumaier summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Checkpointed A(T) = int_0^T Z(t)^2 dt.
struct CumulativeIntegral {
  static constexpr int kVersion = 1;
  std::vector<double> grid;    ///< 0 = T_0 < T_1 < ...
  std::vector<double> values;  ///< A(T_i)
  std::vector<double> err;     ///< absolute error estimate of each A(T_i)
  double tol = 1e-9;
  int corrections = 4;         ///< Riemann-Siegel correction terms C1..C4
  std::string built;           ///< ISO timestamp of the last write
};

/// Owns a CumulativeIntegral, extends it on demand and persists it as a
/// single JSON document. Canonical checkpoints sit at multiples of
/// kCheckpointStep; every value is computed from the canonical checkpoint
/// below it plus a fresh tail, so results do not depend on query history.
/// Single writer; all members are serialized by an internal mutex.
class HlStore {
 public:
  static constexpr double kCheckpointStep = 1000.0;
  static constexpr const char* kFileName = "hl_checkpoint.json";

  /// `dir` empty keeps the store in memory only.
  explicit HlStore(std::filesystem::path dir = {}, double tol = 1e-9);

  /// A(T), recording T in the checkpoint grid and persisting.
  double cumulative_hl(double T);

  /// A(T) without recording T.
  double value_at(double T);

  /// Make sure canonical checkpoints exist up to T.
  void ensure(double T);

  CumulativeIntegral snapshot() const;
  const std::filesystem::path& path() const noexcept { return path_; }
  double tol() const noexcept { return tol_; }
  /// Set when a checkpoint file existed but was rejected on load.
  const std::string& load_warning() const noexcept { return load_warning_; }

 private:
  void load();
  void save_locked() const;
  void ensure_locked(std::size_t k);
  double value_locked(double T);

  std::filesystem::path dir_;
  std::filesystem::path path_;
  double tol_;
  std::vector<double> canon_;      // A(k * step)
  std::vector<double> canon_err_;
  std::vector<std::pair<double, std::pair<double, double>>> extra_;  // T -> (A, err)
  std::string load_warning_;
  mutable std::mutex mu_;
};

/// int_T^{T+U} Z(t)^2 dt.
QuadResult hl_window(double T, double U, double rel_tol = 1e-6);

/// int_0^{t_max} Z^2 e^{-2 delta t} dt - (c - ln(4 pi delta)) / (2 sin delta).
double tka_residual(double delta, double t_max);

/// Smallest admissible truncation point for tka_residual.
double tka_min_tmax(double delta) noexcept;

}  // namespace jladder

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "jladder/integrate.hpp"
#include "jladder/ladder.hpp"
#include "jladder/partitions.hpp"
#include "jladder/report.hpp"
#include "jladder/selberg.hpp"

namespace jladder {

enum class WeightKind { one, s_pow, s1_pow, custom };

/// The weight F of the product integral. S_POW(l) is S(t)^{2l}, S1_POW(l) is
/// S_1(t)^{2l}; both need a SelbergTable covering their argument.
struct WeightFunction {
  WeightKind kind = WeightKind::one;
  int l = 0;
  std::shared_ptr<const SelbergTable> selberg;
  RealFn custom;
  RealFn antiderivative;  ///< optional, CUSTOM only
  std::string label = "one";

  static WeightFunction one();
  static WeightFunction s_pow(int l, std::shared_ptr<const SelbergTable> selberg);
  static WeightFunction s1_pow(int l, std::shared_ptr<const SelbergTable> selberg);
  static WeightFunction make_custom(std::string label, RealFn f, RealFn antiderivative = {});

  double operator()(double t) const;
  /// Discontinuities of F inside (a, b): zero ordinates for S_POW.
  std::vector<double> breakpoints(double a, double b) const;
  /// int_a^b F(t) dt.
  double integral(double a, double b, double rel_tol = 1e-10) const;
};

/// ln T raised to `power`.
double log_power(double T, int power);

/// Default window for Theorem checks: the admissible maximum T / ln^2 T.
double theorem_window(double T) noexcept;
/// Default window for the section-5 checks, T^0.55, clipped to T / ln^2 T.
double selberg_window(double T) noexcept;

/// int_T^{T+U} F[phi^{n+1}(t)] prod_{k=0}^n Z(phi^k(t))^2 dt.
QuadResult product_integral_detail(double T, double U, int n, const WeightFunction& F,
                                   const LadderTable& table, double rel_tol = 1e-6);
double product_integral(double T, double U, int n, const WeightFunction& F,
                        const LadderTable& table, double rel_tol = 1e-6);

/// int_T^{T+U} prod_{k=0}^{m-1} Z(phi^k(t))^2 dt (m factors, F = 1).
double window_integral(double T, double U, int m, const LadderTable& table, double rel_tol = 1e-6);

/// phi^k(T+U) - phi^k(T).
double iterate_length(double T, double U, int k, const LadderTable& table);

RatioReport theorem_ratio(double T, double U, int n, const WeightFunction& F,
                          const LadderTable& table);

/// The integro-iterative equation's defining ratio; identical to theorem_ratio
/// apart from the label.
RatioReport corollary_ratio(double T, double U, int n, const WeightFunction& F,
                            const LadderTable& table);

struct IdentityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  ///< |lhs - rhs| / |rhs| (absolute when rhs = 0)
};

/// Change-of-variables identity with the chain factors
/// d phi^{k+1} / d phi^k = Z(phi^k)^2 / ladder_slope(phi^{k+1}).
IdentityResult identity_6_16_detail(double T, double U, int n, const WeightFunction& F,
                                    const LadderTable& table, double rel_tol = 1e-9);
double identity_6_16(double T, double U, int n, const WeightFunction& F, const LadderTable& table);

struct ChainRuleResult {
  double product = 0.0;    ///< prod_k d phi^{k+1}/d phi^k
  double finite_difference = 0.0;
  double deviation = 0.0;  ///< |product - fd| / max(|product|, |fd|)
};

/// Compares the product of chain factors at the iterates of t with a
/// fourth-order central difference of phi^{n+1}. Every displacement is
/// computed locally from Z^2 integrals around anchor points taken from the
/// table, so the check is independent of the interpolation error.
ChainRuleResult chain_rule_detail(double t, int n, const LadderTable& table, double h = 1e-4);
double chain_rule_check(double t, int n, const LadderTable& table);

/// Weighted mean J_L = g_L (1/U) int prod_{k<L} Z^2 = I_L / (phi^L(T+U) - phi^L(T)).
double weighted_energy(double T, double U, int L, const LadderTable& table, double rel_tol = 1e-6);

/// rel_tol applies to every product integral of the report.
RatioReport factorization_ratio(const ProperPartition& p, double T, double U,
                                const WeightFunction& F, const LadderTable& table,
                                double rel_tol = 1e-6);

RatioReport cross_partition_ratio(const ProperPartition& p1, const ProperPartition& p2, double T,
                                  double U, const LadderTable& table, double rel_tol = 1e-6);

struct TauWitness {
  std::array<double, 3> tau{};
  RatioReport report;
};

/// Mean-value points behind the |zeta|-distribution corollary for n+1 = 3.
TauWitness tau_witness(double T, double U, const LadderTable& table);

/// Product over k of per-component window means. When `store` is given the
/// per-component integrals are also taken from A(T) differences and their
/// largest relative deviation is recorded in meta.
RatioReport full_factorization_ratio(double T, double U, int n, const WeightFunction& F,
                                     const LadderTable& table, HlStore* store = nullptr);

/// (n+1)-th power of the l-th component chord ratio. l = 0 is labeled 4.7.
RatioReport degenerate_factorization_ratio(double T, double U, int n, int l,
                                           const WeightFunction& F, const LadderTable& table);

enum class SelbergWhich { S, S1 };

/// which = S: (1/U) int (arg zeta(1/2 + i phi^{n+1}))^{2l} prod Z^2 against
/// (2l)!/(4^l l!) (ln ln T)^l ln^{n+1} T. which = S1: the empirical
/// d_l = (1/U) int S_1(phi^{n+1})^{2l} prod Z^2 / ln^{n+1} T.
RatioReport selberg_gen_ratio(double T, double U, int n, int l, SelbergWhich which,
                              const LadderTable& table,
                              std::shared_ptr<const SelbergTable> selberg);

/// Lower edge of the macroscopic window, T^{1/3 + eps}.
inline constexpr double kMacroscopicEps = 0.01;

/// Two reports: "6.10" (window integral against U ln T) and "1.7" (against
/// the chord phi_1(T+U) - phi_1(T) times ln T). Throws DomainError unless
/// T^{1/3 + eps} <= U <= T / ln^2 T.
std::vector<RatioReport> hl_window_ratio(double T, double U, const LadderTable& table);

/// A(T) / (T ln T).
RatioReport global_hl_ratio(double T, HlStore& store);

/// The sixth-order formula with U_1 = T^{7/8}. Diagnostic.
RatioReport sixth_order_ratio(double T, const LadderTable& table, double rel_tol = 1e-6);

/// Residual of the TKA formula at each delta, truncated at max(t_max,
/// tka_min_tmax(delta)), against the residual at the previous delta (twice
/// the first delta for the first report). Diagnostic; meta records the
/// successive differences.
std::vector<RatioReport> tka_reports(const std::vector<double>& deltas, double t_max = 0.0);

/// The four reductions that share W = int_T^{T+U} Z^2 and the chord
/// phi_1(T+U) - phi_1(T). Returns the largest relative disagreement of the
/// implied chord ratio W / (chord ln T) among them.
struct ReductionResult {
  std::vector<RatioReport> reports;
  double max_rel_diff = 0.0;
};
ReductionResult reduction_consistency(double T, double U, const LadderTable& table);

}  // namespace jladder

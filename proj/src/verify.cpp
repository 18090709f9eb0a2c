#include "jladder/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "jladder/constants.hpp"
#include "jladder/zeta.hpp"

namespace jladder {

namespace {

constexpr double kPi = std::numbers::pi;

void check_window(double T, double U, const char* who) {
  if (!(T >= kDomainFloor)) throw DomainError(std::string(who) + ": T below the domain floor");
  if (!(U >= 0.0) || U > max_window(T) * (1.0 + 1e-12))
    throw DomainError(std::string(who) + ": U must lie in [0, T/ln^2 T]");
}

std::vector<double> ordinates_in(const SelbergTable& s, double a, double b) {
  const auto& g = s.zeros().ordinates;
  auto lo = std::upper_bound(g.begin(), g.end(), a);
  auto hi = std::lower_bound(g.begin(), g.end(), b);
  return {lo, hi};
}

double factorial(int k) { return std::tgamma(double(k) + 1.0); }

// Panels sized by the local frequency of the composite integrand. The factor
// Z(phi^k(t))^2 oscillates in t at the rate of Z^2 times (phi^k)'(t), which
// can reach 10^4 and more where several iterates meet large values of |zeta|.
QuadOptions composite_panels(int depth, const LadderTable& table) {
  QuadOptions opts;
  opts.max_width = [depth, &table](double t) {
    double slope = 1.0, total = 1.0, x = t;
    for (int k = 1; k <= depth; ++k) {
      slope *= table.phi_slope(x);
      x = table.phi(x);
      total += slope;
    }
    return oscillation_scale(t) / total;
  };
  return opts;
}

nlohmann::json partition_json(const ProperPartition& p) { return p.parts; }

bool is_printed_pair(const ProperPartition& a, const ProperPartition& b) {
  const std::vector<int> two{2, 2, 2}, three{3, 3};
  return (a.parts == two && b.parts == three) || (a.parts == three && b.parts == two);
}

}  // namespace

// ---------------------------------------------------------------------------
// Weight functions

WeightFunction WeightFunction::one() { return {}; }

WeightFunction WeightFunction::s_pow(int l, std::shared_ptr<const SelbergTable> selberg) {
  if (l < 1) throw std::invalid_argument("S_POW needs l >= 1");
  if (!selberg) throw std::invalid_argument("S_POW needs a zero table");
  WeightFunction w;
  w.kind = WeightKind::s_pow;
  w.l = l;
  w.selberg = std::move(selberg);
  w.label = "s2l:" + std::to_string(l);
  return w;
}

WeightFunction WeightFunction::s1_pow(int l, std::shared_ptr<const SelbergTable> selberg) {
  if (l < 1) throw std::invalid_argument("S1_POW needs l >= 1");
  if (!selberg) throw std::invalid_argument("S1_POW needs a zero table");
  WeightFunction w;
  w.kind = WeightKind::s1_pow;
  w.l = l;
  w.selberg = std::move(selberg);
  w.label = "s1_2l:" + std::to_string(l);
  return w;
}

WeightFunction WeightFunction::make_custom(std::string label, RealFn f, RealFn antiderivative) {
  WeightFunction w;
  w.kind = WeightKind::custom;
  w.custom = std::move(f);
  w.antiderivative = std::move(antiderivative);
  w.label = std::move(label);
  return w;
}

double WeightFunction::operator()(double t) const {
  switch (kind) {
    case WeightKind::one:
      return 1.0;
    case WeightKind::s_pow:
      return std::pow(selberg->s(t), 2 * l);
    case WeightKind::s1_pow:
      return std::pow(selberg->s1(t), 2 * l);
    case WeightKind::custom:
      return custom(t);
  }
  return 0.0;
}

std::vector<double> WeightFunction::breakpoints(double a, double b) const {
  if (kind == WeightKind::s_pow || kind == WeightKind::s1_pow) return ordinates_in(*selberg, a, b);
  return {};
}

double WeightFunction::integral(double a, double b, double rel_tol) const {
  if (a == b) return 0.0;
  if (a > b) return -integral(b, a, rel_tol);
  switch (kind) {
    case WeightKind::one:
      return b - a;
    case WeightKind::custom:
      if (antiderivative) return antiderivative(b) - antiderivative(a);
      return integrate_adaptive(custom, a, b, rel_tol).value;
    default: {
      QuadOptions opts;
      opts.breakpoints = breakpoints(a, b);
      opts.max_width = [](double t) { return oscillation_scale(t); };
      return integrate_adaptive([this](double t) { return (*this)(t); }, a, b, rel_tol, opts).value;
    }
  }
}

// ---------------------------------------------------------------------------
// Product integrals

double log_power(double T, int power) { return std::pow(std::log(T), power); }

double theorem_window(double T) noexcept { return max_window(T); }

double selberg_window(double T) noexcept { return std::min(std::pow(T, 0.55), max_window(T)); }

double iterate_length(double T, double U, int k, const LadderTable& table) {
  if (k == 0) return U;
  return table.iter(T + U, k) - table.iter(T, k);
}

QuadResult product_integral_detail(double T, double U, int n, const WeightFunction& F,
                                   const LadderTable& table, double rel_tol) {
  if (n < 0 || n + 1 > kMaxIterate) throw std::invalid_argument("product_integral: n outside [0, 11]");
  if (!(U >= 0.0)) throw DomainError("product_integral: U must be non-negative");
  if (U == 0.0) return {};
  const bool weighted = F.kind != WeightKind::one;
  const int depth = weighted ? n + 1 : n;
  if (depth > 0 && !(table.covers(T) && table.covers(T + U)))
    throw DomainError("product_integral: table does not cover [T, T+U]");

  const auto f = [&](double t) {
    double prod = abs_zeta_sq(t);
    double x = t;
    for (int k = 1; k <= depth; ++k) {
      x = table.phi(x);
      if (k <= n) prod *= abs_zeta_sq(x);
    }
    return weighted ? prod * F(x) : prod;
  };

  QuadOptions opts = composite_panels(depth, table);
  if (weighted) {
    // Jumps (S) and kinks (S_1) of F pulled back to the t axis.
    const double lo = table.iter(T, n + 1), hi = table.iter(T + U, n + 1);
    for (double g : F.breakpoints(lo, hi)) {
      double y = g;
      for (int k = 0; k <= n; ++k) y = table.inverse(y);
      if (y > T && y < T + U) opts.breakpoints.push_back(y);
    }
  }
  return integrate_adaptive(f, T, T + U, rel_tol, opts);
}

double product_integral(double T, double U, int n, const WeightFunction& F,
                        const LadderTable& table, double rel_tol) {
  return product_integral_detail(T, U, n, F, table, rel_tol).value;
}

double window_integral(double T, double U, int m, const LadderTable& table, double rel_tol) {
  if (m < 1) throw std::invalid_argument("window_integral: need at least one factor");
  return product_integral(T, U, m - 1, WeightFunction::one(), table, rel_tol);
}

double weighted_energy(double T, double U, int L, const LadderTable& table, double rel_tol) {
  return window_integral(T, U, L, table, rel_tol) / iterate_length(T, U, L, table);
}

// ---------------------------------------------------------------------------
// Theorem and corollary

RatioReport theorem_ratio(double T, double U, int n, const WeightFunction& F,
                          const LadderTable& table) {
  check_window(T, U, "theorem_ratio");
  RatioReport r;
  r.formula_id = "2.1";
  r.T = T;
  r.U = U;
  r.n = n;
  r.F = F.label;
  const double lo = table.iter(T, n + 1), hi = table.iter(T + U, n + 1);
  const double f_int = F.integral(lo, hi);
  if (f_int == 0.0) throw DomainError("theorem_ratio: the F integral vanishes");
  const QuadResult q = product_integral_detail(T, U, n, F, table);
  r.lhs = q.value;
  r.rhs = f_int * log_power(T, n + 1);
  r.kind = F.kind == WeightKind::one ? ReportKind::trend : ReportKind::diagnostic;
  r.meta["F_integral"] = f_int;
  r.meta["quad_err"] = q.err_est;
  r.meta["chord"] = iterate_length(T, U, n + 1, table);
  if (n == 0 && F.kind == WeightKind::one) r.meta["W"] = q.value;
  finish(r);
  return r;
}

RatioReport corollary_ratio(double T, double U, int n, const WeightFunction& F,
                            const LadderTable& table) {
  RatioReport r = theorem_ratio(T, U, n, F, table);
  r.formula_id = "2.10";
  r.meta["same_as"] = "2.1";
  return r;
}

// ---------------------------------------------------------------------------
// Exact identities

IdentityResult identity_6_16_detail(double T, double U, int n, const WeightFunction& F,
                                    const LadderTable& table, double rel_tol) {
  if (n < 0 || n + 1 > kMaxIterate) throw std::invalid_argument("identity_6_16: n outside [0, 11]");
  check_window(T, U, "identity_6_16");
  IdentityResult res;
  if (U == 0.0) return res;
  const auto f = [&](double t) {
    double prod = 1.0;
    double x = t;
    for (int k = 0; k <= n; ++k) {
      const double next = table.phi(x);
      prod *= ladder_derivative(x, next);
      x = next;
    }
    return prod * F(x);
  };
  QuadOptions opts = composite_panels(n + 1, table);
  const double lo = table.iter(T, n + 1), hi = table.iter(T + U, n + 1);
  for (double g : F.breakpoints(lo, hi)) {
    double y = g;
    for (int k = 0; k <= n; ++k) y = table.inverse(y);
    if (y > T && y < T + U) opts.breakpoints.push_back(y);
  }
  res.lhs = integrate_adaptive(f, T, T + U, rel_tol, opts).value;
  res.rhs = F.integral(lo, hi, std::max(rel_tol, 1e-12));
  res.residual = res.rhs != 0.0 ? std::fabs(res.lhs - res.rhs) / std::fabs(res.rhs)
                                : std::fabs(res.lhs - res.rhs);
  return res;
}

double identity_6_16(double T, double U, int n, const WeightFunction& F, const LadderTable& table) {
  return identity_6_16_detail(T, U, n, F, table).residual;
}

namespace {

// Delta with (x+D) ln(x+D) - x ln x + (c - ln 2 pi) D = I, i.e. the change
// of phi_1 when A grows by I from the point where phi_1 = x.
long double ladder_step(long double x, long double I) {
  using ld = long double;
  const ld s = static_cast<ld>(kEulerC) - static_cast<ld>(kLnTwoPi);
  ld d = I / (std::log(x) + 1.0L + s);
  for (int it = 0; it < 50; ++it) {
    const ld g = d * std::log(x + d) + x * std::log1p(d / x) + s * d - I;
    const ld dg = std::log(x + d) + 1.0L + s;
    const ld step = g / dg;
    d -= step;
    if (std::fabs(step) <= 1e-19L * std::fabs(d) || step == 0.0L) break;
  }
  return d;
}

// Signed int_x^{x+d} Z^2.
long double z2_increment(double x, long double d) {
  if (d == 0.0L) return 0.0L;
  // Integrate in the offset u = s - x so that the length d is not rounded to
  // the spacing of doubles near x. The increments are far below the
  // oscillation scale, so one panel suffices.
  const double len = static_cast<double>(d);
  const auto g = [x](double u) { return abs_zeta_sq(x + u); };
  const double v = len > 0 ? gauss_kronrod21(g, 0.0, len).value : -gauss_kronrod21(g, len, 0.0).value;
  return v;
}

}  // namespace

ChainRuleResult chain_rule_detail(double t, int n, const LadderTable& table, double h) {
  if (n < 0 || n + 1 > kMaxIterate) throw std::invalid_argument("chain_rule_check: n outside [0, 11]");
  if (!(table.covers(t - 2 * h) && table.covers(t + 2 * h)))
    throw DomainError("chain_rule_check: no room for the difference stencil");
  std::vector<double> x(n + 2);
  x[0] = t;
  for (int k = 0; k <= n; ++k) x[k + 1] = table.phi(x[k]);

  ChainRuleResult res;
  res.product = 1.0;
  for (int k = 0; k <= n; ++k) res.product *= ladder_derivative(x[k], x[k + 1]);

  const auto displacement = [&](double off) {
    long double d = off;
    for (int k = 0; k <= n; ++k) d = ladder_step(x[k + 1], z2_increment(x[k], d));
    return d;
  };
  const long double d1p = displacement(h), d1m = displacement(-h);
  const long double d2p = displacement(2 * h), d2m = displacement(-2 * h);
  res.finite_difference = static_cast<double>((8.0L * (d1p - d1m) - (d2p - d2m)) / (12.0L * h));
  const double scale = std::max(std::fabs(res.product), std::fabs(res.finite_difference));
  res.deviation = scale > 0.0 ? std::fabs(res.product - res.finite_difference) / scale : 0.0;
  return res;
}

double chain_rule_check(double t, int n, const LadderTable& table) {
  return chain_rule_detail(t, n, table).deviation;
}

// ---------------------------------------------------------------------------
// Factorizations

RatioReport factorization_ratio(const ProperPartition& p, double T, double U,
                                const WeightFunction& F, const LadderTable& table,
                                double rel_tol) {
  const ProperPartition q = make_partition(p.n_plus_1, p.parts);
  check_window(T, U, "factorization_ratio");
  const int n = q.n_plus_1 - 1;
  RatioReport r;
  r.formula_id = F.kind == WeightKind::one ? "3.7" : "3.6";
  r.T = T;
  r.U = U;
  r.n = n;
  r.F = F.label + ";p=";
  for (std::size_t i = 0; i < q.parts.size(); ++i) r.F += (i ? "+" : "") + std::to_string(q.parts[i]);

  const WeightSet w = weights(q, T, U, table);
  const double len_top = U / w.g_top;
  const double lo = table.iter(T, n + 1), hi = table.iter(T + U, n + 1);
  const double f_int = F.integral(lo, hi);
  r.lhs = w.g_top * product_integral(T, U, n, F, table, rel_tol) / U;

  std::map<int, double> energy;
  double prod = 1.0;
  for (int a : q.parts) {
    if (!energy.count(a)) energy[a] = w.g.at(a) * window_integral(T, U, a, table, rel_tol) / U;
    prod *= energy[a];
  }
  r.rhs = f_int / len_top * prod;
  r.kind = F.kind == WeightKind::one ? ReportKind::trend : ReportKind::diagnostic;
  r.meta["partition"] = partition_json(q);
  nlohmann::json jw = nlohmann::json::object(), je = nlohmann::json::object();
  for (const auto& [a, g] : w.g) jw[std::to_string(a)] = g;
  for (const auto& [a, e] : energy) je[std::to_string(a)] = e;
  jw[std::to_string(q.n_plus_1)] = w.g_top;
  r.meta["weights"] = jw;
  r.meta["energies"] = je;
  r.meta["rel_tol"] = rel_tol;
  finish(r);
  return r;
}

RatioReport cross_partition_ratio(const ProperPartition& p1, const ProperPartition& p2, double T,
                                  double U, const LadderTable& table, double rel_tol) {
  const ProperPartition a = make_partition(p1.n_plus_1, p1.parts);
  const ProperPartition b = make_partition(p2.n_plus_1, p2.parts);
  if (a.n_plus_1 != b.n_plus_1) throw std::invalid_argument("cross_partition_ratio: different n+1");
  check_window(T, U, "cross_partition_ratio");
  std::map<int, double> energy;
  const auto J = [&](int L) {
    auto it = energy.find(L);
    if (it != energy.end()) return it->second;
    return energy[L] = weighted_energy(T, U, L, table, rel_tol);
  };
  RatioReport r;
  r.formula_id = "3.8";
  r.T = T;
  r.U = U;
  r.n = a.n_plus_1 - 1;
  const auto label = [](const ProperPartition& p) {
    std::string s;
    for (std::size_t i = 0; i < p.parts.size(); ++i) s += (i ? "+" : "") + std::to_string(p.parts[i]);
    return s;
  };
  r.F = "one;" + label(a) + "~" + label(b);
  r.lhs = 1.0;
  for (int L : a.parts) r.lhs *= J(L);
  r.rhs = 1.0;
  for (int L : b.parts) r.rhs *= J(L);
  r.meta["p1"] = partition_json(a);
  r.meta["p2"] = partition_json(b);
  r.meta["extrapolated"] = !is_printed_pair(a, b) && !(a == b);
  finish(r);
  return r;
}

namespace {

// First root of g on (a, b) found by a grid scan and Illinois refinement.
double first_root(const RealFn& g, double a, double b, int cells) {
  for (int attempt = 0; attempt < 2; ++attempt, cells *= 4) {
    const double h = (b - a) / cells;
    double x0 = a + 0.5 * h, g0 = g(x0);
    for (int i = 1; i < cells; ++i) {
      const double x1 = a + (i + 0.5) * h, g1 = g(x1);
      if (g0 == 0.0) return x0;
      if ((g0 < 0.0) != (g1 < 0.0)) {
        double lo = x0, hi = x1, glo = g0, ghi = g1;
        for (int it = 0; it < 200 && hi - lo > 1e-12 * std::fabs(hi); ++it) {
          const double m = (lo * ghi - hi * glo) / (ghi - glo);
          const double gm = g(m);
          if (gm == 0.0) return m;
          if ((gm < 0.0) == (glo < 0.0)) {
            lo = m;
            glo = gm;
            ghi *= 0.5;
          } else {
            hi = m;
            ghi = gm;
            glo *= 0.5;
          }
        }
        return 0.5 * (lo + hi);
      }
      x0 = x1;
      g0 = g1;
    }
  }
  throw DomainError("tau_witness: no sign change of integrand minus mean; window too small");
}

}  // namespace

TauWitness tau_witness(double T, double U, const LadderTable& table) {
  check_window(T, U, "tau_witness");
  if (!(U > 0.0)) throw DomainError("tau_witness: U must be positive");
  const double i2 = window_integral(T, U, 2, table);
  const double i3 = window_integral(T, U, 3, table);
  const double mean2 = i2 / U, q = i3 / i2;
  const int cells = std::max(64, static_cast<int>(U / (0.1 * oscillation_scale(T))));

  TauWitness w;
  w.tau[0] = first_root([&](double t) { return abs_zeta_sq(t) * abs_zeta_sq(table.phi(t)) - mean2; },
                        T, T + U, cells);
  w.tau[1] = table.phi(w.tau[0]);
  const double t1 = first_root([&](double t) { return abs_zeta_sq(table.iter(t, 2)) - q; }, T, T + U, cells);
  w.tau[2] = table.iter(t1, 2);

  const double g2 = weight(2, T, U, table), g3 = weight(3, T, U, table);
  RatioReport& r = w.report;
  r.formula_id = "3.10";
  r.T = T;
  r.U = U;
  r.n = 2;
  r.lhs = abs_zeta_sq(w.tau[2]);
  r.rhs = std::pow(g2, 1.5) / g3 * std::fabs(z_function(w.tau[1])) * std::fabs(z_function(w.tau[0]));
  r.kind = ReportKind::diagnostic;
  r.meta["tau"] = w.tau;
  r.meta["t1"] = t1;
  r.meta["g2"] = g2;
  r.meta["g3"] = g3;
  finish(r);
  return w;
}

RatioReport full_factorization_ratio(double T, double U, int n, const WeightFunction& F,
                                     const LadderTable& table, HlStore* store) {
  check_window(T, U, "full_factorization_ratio");
  RatioReport r;
  r.formula_id = "4.4";
  r.T = T;
  r.U = U;
  r.n = n;
  r.F = F.label;
  const double lo = table.iter(T, n + 1), hi = table.iter(T + U, n + 1);
  const double len_top = hi - lo;
  r.lhs = product_integral(T, U, n, F, table) / U;
  double rhs = F.integral(lo, hi) / len_top;
  std::vector<double> comps, dev;
  double a = T, b = T + U;
  for (int k = 0; k <= n; ++k) {
    const double c = window_integral(a, k == 0 ? U : b - a, 1, table);
    comps.push_back(c);
    if (store) dev.push_back(std::fabs((store->value_at(b) - store->value_at(a)) / c - 1.0));
    const double a1 = table.phi(a), b1 = table.phi(b);
    rhs *= c / (b1 - a1);
    a = a1;
    b = b1;
  }
  r.rhs = rhs;
  r.kind = F.kind == WeightKind::one ? ReportKind::trend : ReportKind::diagnostic;
  r.meta["components"] = comps;
  if (store) r.meta["component_store_rel_dev"] = *std::max_element(dev.begin(), dev.end());
  if (n == 0 && F.kind == WeightKind::one) {
    r.meta["W"] = comps[0];
    r.meta["chord"] = iterate_length(T, U, 1, table);
  }
  finish(r);
  return r;
}

RatioReport degenerate_factorization_ratio(double T, double U, int n, int l,
                                           const WeightFunction& F, const LadderTable& table) {
  if (l < 0 || l > n) throw std::invalid_argument("degenerate_factorization_ratio: need 0 <= l <= n");
  check_window(T, U, "degenerate_factorization_ratio");
  RatioReport r;
  r.formula_id = l == 0 ? "4.7" : "4.6";
  r.T = T;
  r.U = U;
  r.n = n;
  r.F = F.label;
  if (l > 0) r.k = l;
  const double lo = table.iter(T, n + 1), hi = table.iter(T + U, n + 1);
  const double al = table.iter(T, l), bl = table.iter(T + U, l);
  const double comp = window_integral(al, l == 0 ? U : bl - al, 1, table);
  const double chord = iterate_length(T, U, l + 1, table);
  r.lhs = product_integral(T, U, n, F, table);
  r.rhs = F.integral(lo, hi) * std::pow(comp / chord, n + 1);
  r.kind = F.kind == WeightKind::one ? ReportKind::trend : ReportKind::diagnostic;
  r.meta["component"] = comp;
  r.meta["component_chord"] = chord;
  if (l == 0 && n == 0 && F.kind == WeightKind::one) {
    r.meta["W"] = comp;
    r.meta["chord"] = chord;
  }
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------
// Selberg generalizations

RatioReport selberg_gen_ratio(double T, double U, int n, int l, SelbergWhich which,
                              const LadderTable& table,
                              std::shared_ptr<const SelbergTable> selberg) {
  if (l < 1) throw std::invalid_argument("selberg_gen_ratio: l must be >= 1");
  check_window(T, U, "selberg_gen_ratio");
  if (!selberg || selberg->upper() < T + U)
    throw DomainError("selberg_gen_ratio: zero table does not reach T+U");
  RatioReport r;
  r.T = T;
  r.U = U;
  r.n = n;
  r.k = l;
  r.kind = ReportKind::diagnostic;
  const double lnT = std::log(T);
  const double u_min = std::pow(T, 0.5 + kMacroscopicEps);
  r.meta["admissible"] = U >= u_min;
  r.meta["U_min"] = u_min;
  if (which == SelbergWhich::S) {
    const WeightFunction F = WeightFunction::s_pow(l, selberg);
    r.formula_id = "5.5";
    r.F = "arg2l:" + std::to_string(l);
    r.lhs = std::pow(kPi, 2 * l) * product_integral(T, U, n, F, table) / U;
    const double c = factorial(2 * l) / (std::pow(4.0, l) * factorial(l));
    r.rhs = c * std::pow(std::log(lnT), l) * log_power(T, n + 1);
    r.meta["constant"] = c;
    r.meta["constant_note"] =
        "(2l)!/(4^l l!) as in the corollary; the intermediate forms with (2 pi)^{-2l} and "
        "(4 pi)^{-2l} disagree with it, arg = pi S";
  } else {
    const WeightFunction F = WeightFunction::s1_pow(l, selberg);
    r.formula_id = "5.7";
    r.F = F.label;
    r.lhs = product_integral(T, U, n, F, table) / U;
    r.rhs = log_power(T, n + 1);
    r.meta["d_hat"] = r.lhs / r.rhs;
  }
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------
// Hardy-Littlewood windows

std::vector<RatioReport> hl_window_ratio(double T, double U, const LadderTable& table) {
  if (!(T >= kDomainFloor)) throw DomainError("hl_window_ratio: T below the domain floor");
  const double u_min = std::pow(T, 1.0 / 3.0 + kMacroscopicEps);
  if (!(U >= u_min) || U > max_window(T) * (1.0 + 1e-12))
    throw DomainError("hl_window_ratio: U outside [T^{1/3+eps}, T/ln^2 T]");
  const double lnT = std::log(T);
  const double W = window_integral(T, U, 1, table);
  const double chord = iterate_length(T, U, 1, table);
  RatioReport a;
  a.formula_id = "6.10";
  a.T = T;
  a.U = U;
  a.lhs = W;
  a.rhs = U * lnT;
  a.meta["W"] = W;
  finish(a);
  RatioReport b;
  b.formula_id = "1.7";
  b.T = T;
  b.U = U;
  b.lhs = W;
  b.rhs = chord * lnT;
  b.meta["W"] = W;
  b.meta["chord"] = chord;
  finish(b);
  return {a, b};
}

RatioReport global_hl_ratio(double T, HlStore& store) {
  RatioReport r;
  r.formula_id = "1.3";
  r.T = T;
  r.lhs = store.value_at(T);
  r.rhs = T * std::log(T);
  finish(r);
  return r;
}

RatioReport sixth_order_ratio(double T, const LadderTable& table, double rel_tol) {
  const double U1 = std::pow(T, 7.0 / 8.0);
  const WeightFunction F = WeightFunction::make_custom("z4", [](double x) {
    const double z2 = abs_zeta_sq(x);
    return z2 * z2;
  });
  RatioReport r;
  r.formula_id = "1.8";
  r.T = T;
  r.U = U1;
  r.F = F.label;
  r.lhs = product_integral(T, U1, 0, F, table, rel_tol);
  r.rhs = U1 * std::pow(std::log(T), 5) / (2.0 * kPi * kPi);
  r.kind = ReportKind::diagnostic;
  r.meta["rel_tol"] = rel_tol;
  finish(r);
  return r;
}

std::vector<RatioReport> tka_reports(const std::vector<double>& deltas, double t_max) {
  std::vector<RatioReport> out;
  if (deltas.empty()) return out;
  // The first residual is compared against one at twice its delta.
  const double ref_delta = 2.0 * deltas.front();
  double prev = tka_residual(ref_delta, std::max(t_max, tka_min_tmax(ref_delta)));
  double prev_diff = std::numeric_limits<double>::quiet_NaN();
  bool first = true;
  for (double d : deltas) {
    RatioReport r;
    r.formula_id = "1.4";
    r.T = std::max(t_max, tka_min_tmax(d));
    r.U = d;
    r.F = "delta";
    r.lhs = tka_residual(d, r.T);
    r.rhs = prev;
    r.kind = ReportKind::diagnostic;
    finish(r);
    if (first) r.meta["reference_delta"] = ref_delta;
    const double diff = std::fabs(r.lhs - prev);
    r.meta["cauchy_diff"] = diff;
    if (!std::isnan(prev_diff)) r.meta["cauchy_shrinking"] = diff < prev_diff;
    prev_diff = diff;
    prev = r.lhs;
    first = false;
    out.push_back(r);
  }
  return out;
}

ReductionResult reduction_consistency(double T, double U, const LadderTable& table) {
  ReductionResult res;
  res.reports.push_back(theorem_ratio(T, U, 0, WeightFunction::one(), table));
  for (const auto& r : hl_window_ratio(T, U, table))
    if (r.formula_id == "1.7") res.reports.push_back(r);
  res.reports.push_back(full_factorization_ratio(T, U, 0, WeightFunction::one(), table));
  res.reports.push_back(degenerate_factorization_ratio(T, U, 0, 0, WeightFunction::one(), table));
  const double lnT = std::log(T);
  std::vector<double> implied;
  for (const auto& r : res.reports)
    implied.push_back(r.meta.at("W").get<double>() / (r.meta.at("chord").get<double>() * lnT));
  for (double v : implied)
    res.max_rel_diff = std::max(res.max_rel_diff, std::fabs(v / implied.front() - 1.0));
  return res;
}

}  // namespace jladder

#include "jladder/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jladder/constants.hpp"

namespace jladder {

double ladder_lhs(double v, double c0) noexcept {
  return v * std::log(v) + (kEulerC - kLnTwoPi) * v + c0;
}

double ladder_slope(double v) noexcept { return std::log(v) + 1.0 + kEulerC - kLnTwoPi; }

double ladder_derivative(double t, double phi) noexcept {
  return abs_zeta_sq(t) / ladder_slope(phi);
}

double solve_v(double a, double c0) {
  using ld = long double;
  const ld shift = static_cast<ld>(kEulerC) - static_cast<ld>(kLnTwoPi);
  const auto f = [&](ld v) { return v * std::log(v) + shift * v + static_cast<ld>(c0) - a; };
  const auto df = [&](ld v) { return std::log(v) + 1.0L + shift; };

  ld lo = static_cast<ld>(kTwoPi);
  if (!(f(lo) <= 0.0L))
    throw NoBracketError("solve_v: A(T) is below the value at V = 2 pi; T under the domain floor?");
  ld hi = std::max<ld>(a, 4.0L * lo);
  while (f(hi) < 0.0L) hi *= 2.0L;

  ld v = std::clamp<ld>(static_cast<ld>(a) / std::log(std::max<ld>(a, 3.0L)), lo, hi);
  for (int it = 0; it < 200; ++it) {
    const ld fv = f(v);
    if (fv == 0.0L) break;
    if (fv < 0.0L)
      lo = v;
    else
      hi = v;
    ld next = v - fv / df(v);
    if (!(next > lo && next < hi)) next = 0.5L * (lo + hi);
    const ld delta = std::fabs(next - v);
    v = next;
    if (delta <= 4.0L * std::numeric_limits<ld>::epsilon() * v || hi - lo <= std::numeric_limits<ld>::epsilon() * hi)
      break;
  }
  return static_cast<double>(v);
}

Ladder::Ladder(HlStore& store, double c0) : store_(store), c0_(c0) {}

double Ladder::hl(double T) { return store_.value_at(T); }

double Ladder::phi1(double T) {
  if (!(T >= kDomainFloor)) throw DomainError("phi1: T is below the domain floor");
  return solve_v(store_.value_at(T), c0_);
}

double Ladder::phi1_iter(double t, int k) {
  if (k < 0 || k > kMaxIterate) throw std::invalid_argument("phi1_iter: k outside [0, 12]");
  double x = t;
  for (int i = 0; i < k; ++i) x = phi1(x);
  return x;
}

double Ladder::derivative(double t) { return ladder_derivative(t, phi1(t)); }

double max_window(double T) noexcept {
  const double l = std::log(T);
  return T / (l * l);
}

IntervalSystem interval_system(double T, double U, int n, const LadderTable& table) {
  if (n < 0 || n + 1 > kMaxIterate) throw std::invalid_argument("interval_system: n outside [0, 11]");
  if (!(T >= kDomainFloor)) throw DomainError("interval_system: T below the domain floor");
  if (!(U > 0.0) || U > max_window(T) * (1.0 + 1e-12))
    throw DomainError("interval_system: U must lie in (0, T/ln^2 T]");
  IntervalSystem s;
  s.T = T;
  s.U = U;
  s.n = n;
  double a = T, b = T + U;
  for (int k = 0; k <= n + 1; ++k) {
    if (k > 0) {
      a = table.iter(a, 1);
      b = table.iter(b, 1);
    }
    s.endpoints.push_back({a, b});
    s.lengths.push_back(k == 0 ? U : b - a);
  }
  s.disjoint = true;
  for (int k = 0; k <= n; ++k) {
    s.gaps.push_back(s.endpoints[k].first - s.endpoints[k + 1].second);
    if (!(s.gaps.back() > 0.0)) s.disjoint = false;
  }
  return s;
}

}  // namespace jladder

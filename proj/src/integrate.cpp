#include "jladder/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "jladder/constants.hpp"
#include "jladder/zeta.hpp"

namespace jladder {

namespace {

// QUADPACK qk21 abscissae and weights. Gauss nodes sit at odd indices.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525038030, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Leaf {
  double a = 0.0;
  double b = 0.0;
  QuadResult r;
  double abs_value = 0.0;
  int depth = 0;
};

Leaf make_leaf(const RealFn& f, double a, double b, int depth) {
  Leaf l{a, b, {}, 0.0, depth};
  l.r = gauss_kronrod21(f, a, b, &l.abs_value);
  return l;
}

std::vector<double> panel_edges(double a, double b, const QuadOptions& opts) {
  std::vector<double> cuts;
  cuts.push_back(a);
  std::vector<double> bps = opts.breakpoints;
  std::sort(bps.begin(), bps.end());
  for (double x : bps)
    if (x > a && x < b && x > cuts.back()) cuts.push_back(x);
  cuts.push_back(b);

  std::vector<double> edges;
  edges.push_back(a);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double hi = cuts[i + 1];
    double x = cuts[i];
    if (opts.max_width) {
      while (true) {
        double w = opts.max_width(x);
        // Look ahead so that a panel does not run into a region where the
        // width function drops sharply.
        for (int probe = 0; probe < 4 && w > 0.0; ++probe) {
          const double w_end = opts.max_width(std::min(x + w, hi));
          if (!(w_end < w)) break;
          w = w_end;
        }
        // Merge a sliver at the end into the last panel.
        if (!(w > 0.0) || x + 1.25 * w >= hi) break;
        x += w;
        edges.push_back(x);
      }
    }
    edges.push_back(hi);
  }
  return edges;
}

}  // namespace

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

QuadOptions z_panels(int factors) {
  QuadOptions o;
  const double k = factors < 1 ? 1.0 : double(factors);
  o.max_width = [k](double t) { return oscillation_scale(t) / k; };
  return o;
}

QuadResult gauss_kronrod21(const RealFn& f, double a, double b, double* abs_value) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double fc = f(centr);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::fabs(resk);
  std::array<double, 10> fv1{}, fv2{};
  for (int j = 0; j < 5; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::fabs(f1) + std::fabs(f2));
  }
  for (int j = 0; j < 5; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::fabs(f1) + std::fabs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - reskh);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

  const double h = std::fabs(hlgth);
  QuadResult r;
  r.value = resk * hlgth;
  r.evals = 21;
  resabs *= h;
  resasc *= h;
  double abserr = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    abserr = std::max(50.0 * kEps * resabs, abserr);
  r.err_est = abserr;
  if (abs_value != nullptr) *abs_value = resabs;
  return r;
}

QuadResult integrate_adaptive(const RealFn& f, double a, double b, double rel_tol,
                              const QuadOptions& opts) {
  if (!(a <= b)) throw std::invalid_argument("integrate_adaptive: need a <= b");
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-2))
    throw std::invalid_argument("integrate_adaptive: rel_tol outside [1e-12, 1e-2]");
  if (a == b) return {};

  const std::vector<double> edges = panel_edges(a, b, opts);
  const std::size_t n = edges.size() - 1;
  std::vector<Leaf> leaves(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    leaves[i] = make_leaf(f, edges[i], edges[i + 1], 0);

  const auto totals = [&leaves](double& err, double& abs) {
    CompensatedSum e, s;
    for (const Leaf& l : leaves) {
      e.add(l.r.err_est);
      s.add(l.abs_value);
    }
    err = e.value();
    abs = s.value();
  };
  double err = 0.0, abs = 0.0;
  totals(err, abs);
  const auto allowed = [&] { return std::max(rel_tol * abs, opts.abs_floor * (b - a)); };

  // Global refinement: always bisect the leaf with the largest error.
  // Ties are broken by position, so the sequence of splits is deterministic.
  const auto worse = [&leaves](std::size_t x, std::size_t y) {
    if (leaves[x].r.err_est != leaves[y].r.err_est) return leaves[x].r.err_est < leaves[y].r.err_est;
    return leaves[x].a > leaves[y].a;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);
  for (std::size_t i = 0; i < n; ++i) heap.push(i);
  const std::size_t budget = static_cast<std::size_t>(std::max(opts.max_splits, 1)) * n;
  std::size_t splits = 0;
  while (err > allowed() && !heap.empty() && splits < budget) {
    const std::size_t i = heap.top();
    heap.pop();
    const Leaf parent = leaves[i];
    if (parent.depth >= opts.max_depth) continue;
    const double mid = 0.5 * (parent.a + parent.b);
    leaves[i] = make_leaf(f, parent.a, mid, parent.depth + 1);
    leaves.push_back(make_leaf(f, mid, parent.b, parent.depth + 1));
    err += leaves[i].r.err_est + leaves.back().r.err_est - parent.r.err_est;
    abs += leaves[i].abs_value + leaves.back().abs_value - parent.abs_value;
    heap.push(i);
    heap.push(leaves.size() - 1);
    if (++splits % 4096 == 0) totals(err, abs);
  }

  std::sort(leaves.begin(), leaves.end(), [](const Leaf& x, const Leaf& y) { return x.a < y.a; });
  CompensatedSum value, err_sum;
  QuadResult out;
  for (const Leaf& l : leaves) {
    value.add(l.r.value);
    err_sum.add(l.r.err_est);
    out.evals += l.r.evals;
  }
  out.value = value.value();
  out.err_est = err_sum.value();
  totals(err, abs);
  if (out.err_est > allowed())
    throw QuadratureError("integrate_adaptive: subdivision limit reached", out);
  return out;
}

QuadResult hl_window(double T, double U, double rel_tol) {
  return integrate_adaptive(abs_zeta_sq, T, T + U, rel_tol, z_panels());
}

double tka_min_tmax(double delta) noexcept { return 20.0 / delta; }

double tka_residual(double delta, double t_max) {
  if (!(delta > 0.0 && delta <= 0.1))
    throw std::invalid_argument("tka_residual: delta must lie in (0, 0.1]");
  if (!(t_max >= tka_min_tmax(delta)))
    throw std::invalid_argument("tka_residual: truncation point too short");
  const auto f = [delta](double t) { return abs_zeta_sq(t) * std::exp(-2.0 * delta * t); };
  const QuadResult l = integrate_adaptive(f, 0.0, t_max, 1e-11, z_panels());
  const double singular =
      (kEulerC - std::log(4.0 * std::numbers::pi * delta)) / (2.0 * std::sin(delta));
  return l.value - singular;
}

}  // namespace jladder

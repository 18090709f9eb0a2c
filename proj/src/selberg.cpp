#include "jladder/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jladder/constants.hpp"
#include "jladder/integrate.hpp"
#include "jladder/zeta.hpp"

namespace jladder {

namespace {

constexpr double kBracketTol = 1e-9;
constexpr double kChunk = 1000.0;
constexpr int kDipSubdivision = 8;
// Subdivision triggers: a parabolic dip reaching below this fraction of
// the larger neighbour, or a grid value below kSmallRatio times the local
// rms of Z.
constexpr double kDipRatio = 0.3;
constexpr double kSmallRatio = 0.1;

struct Refined {
  double x;
  double width;
};

// Illinois variant of regula falsi on a sign-change bracket.
Refined illinois(double a, double b, double fa, double fb) {
  int side = 0;
  for (int it = 0; it < 200 && b - a >= kBracketTol; ++it) {
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    const double fc = z_function(c);
    if (fc == 0.0) return {c, 0.0};
    if ((fc < 0.0) == (fa < 0.0)) {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = fc;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
  }
  return {0.5 * (a + b), b - a};
}

void push_zero(ZeroList& out, const Refined& r) {
  out.ordinates.push_back(r.x);
  out.bracket_width.push_back(r.width);
  out.refined.push_back(r.width < kBracketTol);
}

void sort_zeros(ZeroList& z) {
  std::vector<std::size_t> idx(z.ordinates.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return z.ordinates[a] < z.ordinates[b]; });
  ZeroList s;
  for (std::size_t i : idx) {
    s.ordinates.push_back(z.ordinates[i]);
    s.bracket_width.push_back(z.bracket_width[i]);
    s.refined.push_back(z.refined[i]);
  }
  z.ordinates = std::move(s.ordinates);
  z.bracket_width = std::move(s.bracket_width);
  z.refined = std::move(s.refined);
}

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

// Vertex value of the parabola through three same-sign samples, measured
// in the direction of their common sign. Returns +inf if the parabola has
// no interior minimum.
double parabola_dip(double x0, double x1, double x2, double y0, double y1, double y2) {
  const double h0 = x1 - x0, h1 = x2 - x1;
  const double d01 = (y1 - y0) / h0, d12 = (y2 - y1) / h1;
  const double curv = (d12 - d01) / (h0 + h1);
  if (!(curv > 0.0)) return std::numeric_limits<double>::infinity();
  const double slope_mid = d01 + curv * h0;
  const double xv = -slope_mid / (2.0 * curv);
  if (xv < -h0 || xv > h1) return std::numeric_limits<double>::infinity();
  return y1 + slope_mid * xv + curv * xv * xv;
}

// Golden-section search for the minimum of sgn * Z on [a, b].
double dip_minimum(double a, double b, double sgn, double* fmin) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = sgn * z_function(c), fd = sgn * z_function(d);
  while (b - a > kBracketTol) {
    if (fc < 0.0 || fd < 0.0) break;
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - kInvPhi * (b - a);
      fc = sgn * z_function(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + kInvPhi * (b - a);
      fd = sgn * z_function(d);
    }
  }
  if (fc < fd) {
    *fmin = fc;
    return c;
  }
  *fmin = fd;
  return d;
}

// Sign changes of Z on a uniform subdivision of [a, b] with known end
// values. Dips that survive the subdivision are resolved by locating the
// minimum of |Z|, which separates a close pair of zeros.
void scan_fine(double a, double b, double za, double zb, int parts, ZeroList& out) {
  std::vector<double> x(parts + 1), z(parts + 1);
  for (int j = 0; j <= parts; ++j) {
    x[j] = j == parts ? b : a + (b - a) * j / parts;
    z[j] = j == 0 ? za : (j == parts ? zb : z_function(x[j]));
  }
  for (int j = 0; j < parts; ++j) {
    if (opposite(z[j], z[j + 1])) {
      push_zero(out, illinois(x[j], x[j + 1], z[j], z[j + 1]));
      continue;
    }
    if (j == 0 || z[j] == 0.0 || opposite(z[j - 1], z[j])) continue;
    const double sgn = z[j] > 0.0 ? 1.0 : -1.0;
    const double y0 = sgn * z[j - 1], y1 = sgn * z[j], y2 = sgn * z[j + 1];
    if (!(y1 <= y0 && y1 <= y2)) continue;
    if (!(parabola_dip(x[j - 1], x[j], x[j + 1], y0, y1, y2) < kDipRatio * std::max(y0, y2)))
      continue;
    double fmin = 0.0;
    const double xm = dip_minimum(x[j - 1], x[j + 1], sgn, &fmin);
    if (!(fmin < 0.0)) continue;
    // Drop the zero already recorded in [x[j-1], x[j]], if any, and replace
    // it by the two zeros on either side of the minimum.
    if (!out.ordinates.empty() && out.ordinates.back() > x[j - 1] && out.ordinates.back() < x[j + 1]) {
      out.ordinates.pop_back();
      out.bracket_width.pop_back();
      out.refined.pop_back();
    }
    const double zm = sgn * fmin;
    push_zero(out, illinois(x[j - 1], xm, z[j - 1], zm));
    push_zero(out, illinois(xm, x[j + 1], zm, z[j + 1]));
  }
}

ZeroList scan_chunk(double lo, double hi) {
  ZeroList out;
  out.lower = lo;
  out.upper = hi;
  std::vector<double> xs{lo};
  while (xs.back() < hi) xs.push_back(std::min(hi, xs.back() + zero_scan_step(xs.back())));
  std::vector<double> zs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) zs[i] = z_function(xs[i]);

  const std::size_t m = xs.size() - 1;  // number of grid intervals
  // Decide which intervals get subdivided before looking for sign changes.
  std::vector<bool> fine(m, false);
  // Same-sign triples whose interpolating parabola dips towards zero may hide
  // a close pair of zeros.
  for (std::size_t i = 1; i < m; ++i) {
    if (zs[i] == 0.0 || opposite(zs[i - 1], zs[i]) || opposite(zs[i], zs[i + 1])) continue;
    const double sgn = zs[i] > 0.0 ? 1.0 : -1.0;
    const double y0 = sgn * zs[i - 1], y1 = sgn * zs[i], y2 = sgn * zs[i + 1];
    const double vmin = parabola_dip(xs[i - 1], xs[i], xs[i + 1], y0, y1, y2);
    if (vmin < kDipRatio * std::max(y0, y2)) fine[i - 1] = fine[i] = true;
  }
  // Values far below the local size of Z: clusters of zeros live there.
  constexpr std::size_t kHalo = 4;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lo_i = i >= kHalo ? i - kHalo : 0;
    const std::size_t hi_i = std::min(xs.size() - 1, i + 1 + kHalo);
    double ss = 0.0;
    for (std::size_t j = lo_i; j <= hi_i; ++j) ss += zs[j] * zs[j];
    const double rms = std::sqrt(ss / double(hi_i - lo_i + 1));
    if (std::min(std::fabs(zs[i]), std::fabs(zs[i + 1])) < kSmallRatio * rms) fine[i] = true;
  }

  for (std::size_t i = 0; i < m;) {
    if (!fine[i]) {
      if (opposite(zs[i], zs[i + 1])) push_zero(out, illinois(xs[i], xs[i + 1], zs[i], zs[i + 1]));
      if (zs[i + 1] == 0.0) push_zero(out, {xs[i + 1], 0.0});
      ++i;
      continue;
    }
    // Subdivide a maximal run of flagged intervals as one piece so that
    // dips sitting on an interior grid point are seen.
    std::size_t k = i;
    int coarse_changes = 0;
    while (k < m && fine[k]) {
      coarse_changes += opposite(zs[k], zs[k + 1]) ? 1 : 0;
      ++k;
    }
    const std::size_t before = out.ordinates.size();
    scan_fine(xs[i], xs[k], zs[i], zs[k], kDipSubdivision * int(k - i), out);
    if (out.ordinates.size() - before != std::size_t(coarse_changes))
      out.suspicious.push_back({xs[i], xs[k]});
    if (zs[k] == 0.0) push_zero(out, {xs[k], 0.0});
    i = k;
  }
  sort_zeros(out);
  return out;
}

}  // namespace

double zero_scan_step(double t) noexcept {
  return 0.5 * kTwoPi / std::log(std::max(t, 50.0) / kTwoPi);
}

ZeroList find_zeros(double lower, double upper) {
  if (!(lower >= 0.0 && upper >= lower)) throw DomainError("find_zeros: need 0 <= lower <= upper");
  if (upper > 1e6) throw DomainError("find_zeros: upper limit is 1e6");
  const auto chunks = static_cast<std::size_t>(std::ceil((upper - lower) / kChunk));
  std::vector<ZeroList> parts(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const double lo = lower + double(c) * kChunk;
    const double hi = c + 1 == static_cast<std::ptrdiff_t>(chunks) ? upper : lo + kChunk;
    parts[c] = scan_chunk(lo, hi);
  }
  ZeroList out;
  out.lower = lower;
  out.upper = lower;
  for (const auto& p : parts) out = merge(out, p);
  out.upper = upper;
  return out;
}

ZeroList merge(const ZeroList& a, const ZeroList& b) {
  if (a.upper != b.lower) throw std::invalid_argument("merge: ranges are not adjacent");
  ZeroList out = a;
  out.upper = b.upper;
  for (std::size_t i = 0; i < b.ordinates.size(); ++i) {
    if (!out.ordinates.empty() && !(b.ordinates[i] > out.ordinates.back())) continue;
    out.ordinates.push_back(b.ordinates[i]);
    out.bracket_width.push_back(b.bracket_width[i]);
    out.refined.push_back(b.refined[i]);
  }
  out.suspicious.insert(out.suspicious.end(), b.suspicious.begin(), b.suspicious.end());
  return out;
}

long count_zeros(double t, bool* lehmer_warning) {
  if (!(t >= 0.0 && t <= 1e6)) throw DomainError("count_zeros: t must lie in [0, 1e6]");
  const ZeroList z = find_zeros(t);
  if (lehmer_warning != nullptr) *lehmer_warning = !z.suspicious.empty();
  return static_cast<long>(z.ordinates.size());
}

long zeros_up_to(const ZeroList& zeros, double t) {
  if (t < zeros.lower || t > zeros.upper) throw DomainError("zero list does not cover t");
  const auto it = std::upper_bound(zeros.ordinates.begin(), zeros.ordinates.end(), t);
  return static_cast<long>(it - zeros.ordinates.begin());
}

double s_function(double t, const ZeroList& zeros) {
  if (zeros.lower != 0.0) throw DomainError("s_function: zero list must start at 0");
  if (std::fabs(z_function(t)) < 1e-12) throw DomainError("s_function: undefined at a zero");
  return double(zeros_up_to(zeros, t)) - theta(t) / std::numbers::pi - 1.0;
}

namespace {

// int_a^b S for a piece on which N(t) == n.
double s_piece(double a, double b, long n, double rel_tol) {
  if (b <= a) return 0.0;
  const double th = integrate_adaptive(theta, a, b, rel_tol).value;
  return (double(n) - 1.0) * (b - a) - th / std::numbers::pi;
}

}  // namespace

double s1_function(double T, const ZeroList& zeros, double rel_tol) {
  if (!(T >= 0.0)) throw DomainError("s1_function: T must be >= 0");
  if (zeros.lower != 0.0 || T > zeros.upper) throw DomainError("s1_function: zero list does not cover T");
  CompensatedSum sum;
  double a = 0.0;
  long n = 0;
  for (double g : zeros.ordinates) {
    if (g >= T) break;
    sum.add(s_piece(a, g, n, rel_tol));
    a = g;
    ++n;
  }
  sum.add(s_piece(a, T, n, rel_tol));
  return sum.value();
}

SelbergTable::SelbergTable(double upper, double rel_tol)
    : SelbergTable(find_zeros(upper), rel_tol) {}

SelbergTable::SelbergTable(ZeroList zeros, double rel_tol)
    : zeros_(std::move(zeros)), rel_tol_(rel_tol) {
  if (zeros_.lower != 0.0) throw DomainError("SelbergTable: zero list must start at 0");
  build_prefix();
}

void SelbergTable::build_prefix() {
  const auto& g = zeros_.ordinates;
  std::vector<double> pieces(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(g.size()); ++j) {
    const double a = j == 0 ? 0.0 : g[j - 1];
    pieces[j] = s_piece(a, g[j], static_cast<long>(j), rel_tol_);
  }
  s1_at_zero_.resize(g.size());
  CompensatedSum sum;
  for (std::size_t j = 0; j < g.size(); ++j) {
    sum.add(pieces[j]);
    s1_at_zero_[j] = sum.value();
  }
}

double SelbergTable::s(double t) const {
  return double(zeros_up_to(zeros_, t)) - theta(t) / std::numbers::pi - 1.0;
}

double SelbergTable::s1(double T) const {
  if (!(T >= 0.0) || T > zeros_.upper) throw DomainError("SelbergTable::s1: T outside table");
  const auto& g = zeros_.ordinates;
  const auto j = static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), T) - g.begin());
  if (j == 0) return s_piece(0.0, T, 0, rel_tol_);
  return s1_at_zero_[j - 1] + s_piece(g[j - 1], T, static_cast<long>(j), rel_tol_);
}

}  // namespace jladder

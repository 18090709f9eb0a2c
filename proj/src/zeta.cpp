#include "jladder/zeta.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "jladder/constants.hpp"

namespace jladder {

double oscillation_scale(double t) noexcept {
  const double tt = t < 10.0 ? 10.0 : t;
  return kTwoPi / std::log(tt / kTwoPi);
}

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// B_{2k} for k = 1..10.
constexpr std::array<double, 10> kBernoulli2k = {
    1.0 / 6.0,       -1.0 / 30.0,  1.0 / 42.0,          -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0, 7.0 / 6.0,        -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0};

// B_{2k} / (2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}, k = 1..kMaxBernoulli.
constexpr int kMaxBernoulli = 60;

const std::array<double, kMaxBernoulli + 1>& bernoulli_over_factorial() {
  static const auto table = [] {
    std::array<double, kMaxBernoulli + 1> b{};
    for (int k = 1; k <= kMaxBernoulli; ++k) {
      double zeta2k = 0.0;
      if (k == 1) {
        zeta2k = kPi * kPi / 6.0;
      } else {
        // Direct sum with an Euler-Maclaurin tail.
        constexpr int kCut = 40;
        const double s = 2.0 * k;
        for (int n = kCut - 1; n >= 1; --n) zeta2k += std::pow(double(n), -s);
        const double nc = kCut;
        zeta2k += std::pow(nc, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nc, -s) +
                  s / 12.0 * std::pow(nc, -s - 1.0) -
                  s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(nc, -s - 3.0);
      }
      const double mag = 2.0 * zeta2k * std::pow(kTwoPi, -2.0 * k);
      b[k] = (k % 2 == 1) ? mag : -mag;
    }
    return b;
  }();
  return table;
}

// Riemann-Siegel remainder coefficients C_0..C_4 as power series in
// z = 2p - 1, p the fractional part of sqrt(t / 2 pi). Only the nonzero
// (even or odd) powers are listed.
constexpr double kC0[] = {
    .38268343236508977173,  .43724046807752044936,  .13237657548034352332,
    -.01360502604767418865, -.01356762197010358089, -.00162372532314446528,
    .00029705353733379691,  .00007943300879521470,  .00000046556124614505,
    -.00000143272516309551, -.00000010354847112313, .00000001235792708386,
    .00000000178810838580,  -.00000000003391414390, -.00000000001632663390,
    -.00000000000037851093, .00000000000009327423,  .00000000000000522184,
    -.00000000000000033507, -.00000000000000003412, .00000000000000000058,
    .00000000000000000015};
constexpr double kC1[] = {
    -.02682510262837534703, .01378477342635185305,  .03849125048223508223,
    .00987106629906207647,  -.00331075976085840433, -.00146478085779541508,
    -.00001320794062487696, .00005922748701847141,  .00000598024258537345,
    -.00000096413224561698, -.00000018334733722714, .00000000446708756272,
    .00000000270963508218,  .00000000007785288654,  -.00000000002343762601,
    -.00000000000158301728, .00000000000012119942,  .00000000000001458378,
    -.00000000000000028786, -.00000000000000008663, -.00000000000000000084,
    .00000000000000000036,  .00000000000000000001};
constexpr double kC2[] = {
    .00518854283029316849,  .00030946583880634746,  -.01133594107822937338,
    .00223304574195814477,  .00519663740886233021,  .00034399144076208337,
    -.00059106484274705828, -.00010229972547935857, .00002088839221699276,
    .00000592766549309654,  -.00000016423838362436, -.00000015161199700941,
    -.00000000590780369821, .00000000209115148595,  .00000000017815649583,
    -.00000000001616407246, -.00000000000238069625, .00000000000005398265,
    .00000000000001975014,  .00000000000000023333,  -.00000000000000011188,
    -.00000000000000000416, .00000000000000000044,  .00000000000000000003};
constexpr double kC3[] = {
    -.00133971609071945690, .00374421513637939370,  -.00133031789193214681,
    -.00226546607654717871, .00095484999985067304,  .00060100384589636039,
    -.00010128858286776622, -.00006865733449299826, .00000059853667915386,
    .00000333165985123995,  .00000021919289102435,  -.00000007890884245681,
    -.00000000941468508130, .00000000095701162109,  .00000000018763137453,
    -.00000000000443783768, -.00000000000224267385, -.00000000000003627687,
    .00000000000001763981,  .00000000000000079608,  -.00000000000000009420,
    -.00000000000000000713, .00000000000000000033,  .00000000000000000004};
constexpr double kC4[] = {
    .00046483389361763382,  -.00100566073653404708, .00024044856573725793,
    .00102830861497023219,  -.00076578610717556442, -.00020365286803084818,
    .00023212290491068728,  .00003260214424386520,  -.00002557906251794953,
    -.00000410746443891574, .00000117811136403713,  .00000024456561422485,
    -.00000002391582476734, -.00000000750521420704, .00000000013312279416,
    .00000000013440626754,  .00000000000351377004,  -.00000000000151915445,
    -.00000000000008915418, .00000000000001119589,  .00000000000000105160,
    -.00000000000000005179, -.00000000000000000807, .00000000000000000011,
    .00000000000000000004};

// Horner in z^2, multiplied by z for the odd series.
template <std::size_t N>
double even_series(const double (&c)[N], double z2) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * z2 + c[i];
  return acc;
}

struct RsTables {
  std::vector<int> smallest_factor;
  std::vector<int> primes;
  std::vector<double> log_n;
  std::vector<double> inv_sqrt_n;
};

const RsTables& rs_tables() {
  static const RsTables tables = [] {
    const int n_max =
        static_cast<int>(std::sqrt(kMaxOrdinate / kTwoPi)) + 4;
    RsTables t;
    t.smallest_factor.assign(n_max + 1, 0);
    t.log_n.resize(n_max + 1);
    t.inv_sqrt_n.resize(n_max + 1);
    for (int i = 2; i <= n_max; ++i) {
      if (t.smallest_factor[i] != 0) continue;
      t.primes.push_back(i);
      for (int j = i; j <= n_max; j += i)
        if (t.smallest_factor[j] == 0) t.smallest_factor[j] = i;
    }
    for (int i = 1; i <= n_max; ++i) {
      t.log_n[i] = std::log(double(i));
      t.inv_sqrt_n[i] = 1.0 / std::sqrt(double(i));
    }
    return t;
  }();
  return tables;
}

// sin and cos for |x| < kFastSinCosLimit: Cody-Waite reduction by pi/2 in
// three exact parts, then the fdlibm minimax kernels on [-pi/4, pi/4].
// Branch-free so loops over it vectorize.
constexpr double kFastSinCosLimit = 8.0e6;

inline void fast_sincos(double x, double& s, double& c) {
  constexpr double kTwoOverPi = 0.63661977236758134308;
  constexpr double kPio2A = 1.5707963258028030396;      // 27 bits
  constexpr double kPio2B = 9.9209357395935171553e-10;  // next 27 bits
  constexpr double kPio2C = 5.7211887261098318401e-18;
  const double k = std::nearbyint(x * kTwoOverPi);
  const double r = ((x - k * kPio2A) - k * kPio2B) - k * kPio2C;
  const double z = r * r;
  const double sr =
      r + r * z *
              (-1.66666666666666324348e-01 +
               z * (8.33333333332248946124e-03 +
                    z * (-1.98412698298579493134e-04 +
                         z * (2.75573137070700676789e-06 +
                              z * (-2.50507602534068634195e-08 +
                                   z * 1.58969099521155010221e-10)))));
  const double cr =
      1.0 - 0.5 * z +
      z * z *
          (4.16666666666666019037e-02 +
           z * (-1.38888888888741095749e-03 +
                z * (2.48015872894767294178e-05 +
                     z * (-2.75573143513906633035e-07 +
                          z * (2.08757232129817482790e-09 +
                               z * -1.13596475577881948265e-11)))));
  const long q = static_cast<long>(k) & 3;
  const double s0 = (q & 1) ? cr : sr;
  const double c0 = (q & 1) ? sr : cr;
  s = (q & 2) ? -s0 : s0;
  c = ((q + 1) & 2) ? -c0 : c0;
}

// theta(t) mod 2 pi, evaluated in extended precision so the phase keeps
// its absolute accuracy at large t.
long double theta_stirling_ld(double t) {
  const long double x = t;
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  const long double series =
      inv *
      (1.0L / 48.0L +
       inv2 * (7.0L / 5760.0L +
               inv2 * (31.0L / 80640.0L +
                       inv2 * (127.0L / 430080.0L +
                               inv2 * (511.0L / 1216512.0L)))));
  return 0.5L * x * std::log(x / (2.0L * std::numbers::pi_v<long double>)) -
         0.5L * x - std::numbers::pi_v<long double> / 8.0L + series;
}

double theta_mod_two_pi(double t) {
  if (t < kStirlingThreshold) return std::fmod(theta_oracle(t), kTwoPi);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  return static_cast<double>(std::fmod(theta_stirling_ld(t), two_pi));
}

double riemann_siegel(double t) {
  const RsTables& tab = rs_tables();
  const double tau = std::sqrt(t / kTwoPi);
  const int n = static_cast<int>(tau);
  const double th = theta_mod_two_pi(t);

  // exp(-i t ln m) for m = 1..n; composites are products of their factors'
  // rotations, so only primes need a sine and cosine.
  thread_local std::vector<double> re, im;
  if (re.size() < static_cast<std::size_t>(n + 1)) {
    re.resize(n + 1);
    im.resize(n + 1);
  }
  re[1] = 1.0;
  im[1] = 0.0;
  const bool fast = t * tab.log_n[n > 1 ? n : 1] < kFastSinCosLimit;
  for (const int p : tab.primes) {
    if (p > n) break;
    const double ph = t * tab.log_n[p];
    double sv, cv;
    if (fast) {
      fast_sincos(ph, sv, cv);
    } else {
      sv = std::sin(ph);
      cv = std::cos(ph);
    }
    re[p] = cv;
    im[p] = -sv;
  }
  double sum_re = 1.0, sum_im = 0.0;
  for (int m = 2; m <= n; ++m) {
    const int p = tab.smallest_factor[m];
    if (p != m) {
      const int q = m / p;
      re[m] = re[p] * re[q] - im[p] * im[q];
      im[m] = re[p] * im[q] + im[p] * re[q];
    }
    sum_re += tab.inv_sqrt_n[m] * re[m];
    sum_im += tab.inv_sqrt_n[m] * im[m];
  }
  const double main = 2.0 * (std::cos(th) * sum_re - std::sin(th) * sum_im);

  const double p = tau - n;
  const double z = 2.0 * p - 1.0;
  const double z2 = z * z;
  const double inv_tau = 1.0 / tau;
  const double corr =
      even_series(kC0, z2) +
      inv_tau * (z * even_series(kC1, z2) +
                 inv_tau * (even_series(kC2, z2) +
                            inv_tau * (z * even_series(kC3, z2) +
                                       inv_tau * even_series(kC4, z2))));
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(n-1)
  return main + sign * corr / std::sqrt(tau);
}

void check_domain(double t) {
  if (!(t >= 0.0)) throw DomainError("ordinate must be non-negative");
  if (t > kMaxOrdinate) throw DomainError("ordinate above supported range");
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0)) throw DomainError("log_gamma requires Re(z) > 0");
  constexpr double kShiftTo = 16.0;
  cplx shift_log(0.0, 0.0);
  cplx w = z;
  if (std::abs(w) < kShiftTo) {
    const int m = static_cast<int>(std::ceil(kShiftTo - w.real()));
    for (int k = 0; k < m; ++k) shift_log += std::log(w + double(k));
    w += double(m);
  }
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx series(0.0, 0.0);
  cplx pw = inv;
  for (std::size_t k = 1; k <= kBernoulli2k.size(); ++k) {
    series += kBernoulli2k[k - 1] / double(2 * k * (2 * k - 1)) * pw;
    pw *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * kLnTwoPi + series - shift_log;
}

double theta_oracle(double t) {
  if (!(t >= 0.0)) throw DomainError("theta requires t >= 0");
  return std::imag(log_gamma(cplx(0.25, 0.5 * t))) - 0.5 * t * kLnPi;
}

double theta(double t) {
  check_domain(t);
  if (t < kStirlingThreshold) return theta_oracle(t);
  return static_cast<double>(theta_stirling_ld(t));
}

int default_em_terms(double t) noexcept {
  return 20 + static_cast<int>(std::ceil(t / std::numbers::pi));
}

std::complex<double> zeta_em(double t, int terms) {
  check_domain(t);
  if (terms < 10) throw DomainError("Euler-Maclaurin needs at least 10 terms");
  const cplx s(0.5, t);
  cplx sum(0.0, 0.0);
  for (int n = terms - 1; n >= 1; --n) {
    const double ln = std::log(double(n));
    sum += std::polar(1.0 / std::sqrt(double(n)), -t * ln);
  }
  const double big_n = terms;
  const double ln_n = std::log(big_n);
  const cplx n_pow_neg_s = std::polar(1.0 / std::sqrt(big_n), -t * ln_n);
  sum += n_pow_neg_s * big_n / (s - 1.0) + 0.5 * n_pow_neg_s;

  // sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  const auto& b = bernoulli_over_factorial();
  cplx rising = s;  // s(s+1)...(s+2k-2)
  cplx n_pow = n_pow_neg_s / big_n;
  const double inv_n2 = 1.0 / (big_n * big_n);
  double last = INFINITY;
  for (int k = 1; k <= kMaxBernoulli; ++k) {
    const cplx term = b[k] * rising * n_pow;
    const double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    if (mag < 1e-18 * std::abs(sum)) break;
    last = mag;
    rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
    n_pow *= inv_n2;
  }
  return sum;
}

std::complex<double> zeta_em(double t) { return zeta_em(t, default_em_terms(t)); }

ZValue z_eval(double t) {
  check_domain(t);
  if (t < kRiemannSiegelThreshold) {
    const double th = theta(t);
    const cplx rotated = std::polar(1.0, th) * zeta_em(t);
    return {rotated.real(), ZPath::euler_maclaurin, t < 10.0};
  }
  return {riemann_siegel(t), ZPath::riemann_siegel, false};
}

double z_function(double t) { return z_eval(t).value; }

double abs_zeta_sq(double t) {
  const double z = z_function(t);
  return z * z;
}

ZetaSample sample(double t) {
  ZetaSample s;
  s.t = t;
  s.theta = theta(t);
  s.z = z_function(t);
  s.abs_zeta_sq = s.z * s.z;
  return s;
}

}  // namespace jladder

#pragma once

#include <complex>
#include <stdexcept>

namespace jladder {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One evaluation point on the critical line.
struct ZetaSample {
  double t = 0.0;
  double theta = 0.0;
  double z = 0.0;
  double abs_zeta_sq = 0.0;
};

/// Below this ordinate Z(t) is computed from the Euler-Maclaurin oracle
/// instead of the Riemann-Siegel expansion. With corrections C0..C4 the
/// expansion reaches 1e-8 absolute accuracy only from about t = 250 on.
inline constexpr double kRiemannSiegelThreshold = 400.0;

/// theta(t) switches from shifted log-gamma to the Stirling series here.
inline constexpr double kStirlingThreshold = 30.0;

/// Riemann-Siegel theta function. Stirling series for t >= 30, shifted
/// log-gamma below.
double theta(double t);

/// theta(t) computed through log_gamma for every t. Slower; used as the
/// independent reference for theta().
double theta_oracle(double t);

/// Complex log-gamma for Re(z) > 0 by upward shift plus Stirling series.
/// The imaginary part is the continuous branch along rays from the real axis.
std::complex<double> log_gamma(std::complex<double> z);

enum class ZPath { riemann_siegel, euler_maclaurin };

struct ZValue {
  double value = 0.0;
  ZPath path = ZPath::riemann_siegel;
  bool degraded = false;  ///< t < 10, outside the accuracy contract
};

ZValue z_eval(double t);

/// Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it).
double z_function(double t);

/// |zeta(1/2 + it)|^2 = Z(t)^2.
double abs_zeta_sq(double t);

ZetaSample sample(double t);

/// zeta(1/2 + it) by Euler-Maclaurin summation with `terms` direct summands
/// followed by Bernoulli corrections until they stop decreasing.
std::complex<double> zeta_em(double t, int terms);

/// zeta_em with a term count large enough for double accuracy at ordinate t.
std::complex<double> zeta_em(double t);

int default_em_terms(double t) noexcept;

}  // namespace jladder

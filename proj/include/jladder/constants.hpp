#pragma once

#include <numbers>

namespace jladder {

/// Euler's constant c.
inline constexpr double kEulerC = 0.57721566490153286061;
inline constexpr double kLnTwoPi = 1.83787706640934548356;
inline constexpr double kLnPi = 1.14472988584940017414;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Hardy-Ramanujan exponent constant pi*sqrt(2/3).
inline constexpr double kHardyRamanujanK = 2.56509966032372819109;

/// Lowest t at which the ladder is evaluated.
inline constexpr double kDomainFloor = 100.0;

/// Upper end of the supported evaluation range for Z(t).
inline constexpr double kMaxOrdinate = 1.0e8;

/// Local oscillation scale of Z-derived integrands: 2*pi / ln(t / 2*pi),
/// with t clamped below at 10.
double oscillation_scale(double t) noexcept;

}  // namespace jladder

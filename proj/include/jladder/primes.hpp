#pragma once

namespace jladder {

/// Largest argument for which prime_pi is exact.
inline constexpr double kPrimeSieveLimit = 1.0e7;

struct PrimeCount {
  double value = 0.0;
  bool exact = false;  ///< false when the t / ln t approximation was used
};

/// pi(t): sieve count for t <= 1e7, t / ln t above.
PrimeCount prime_pi(double t);

}  // namespace jladder

#include "jladder/primes.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace jladder {

namespace {

// Prefix counts of primes over [0, kPrimeSieveLimit], built once.
const std::vector<std::uint32_t>& prime_prefix() {
  static const std::vector<std::uint32_t> prefix = [] {
    const auto n = static_cast<std::size_t>(kPrimeSieveLimit);
    std::vector<bool> composite(n + 1, false);
    composite[0] = composite[1] = true;
    for (std::size_t p = 2; p * p <= n; ++p)
      if (!composite[p])
        for (std::size_t q = p * p; q <= n; q += p) composite[q] = true;
    std::vector<std::uint32_t> out(n + 1);
    std::uint32_t c = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (!composite[i]) ++c;
      out[i] = c;
    }
    return out;
  }();
  return prefix;
}

}  // namespace

PrimeCount prime_pi(double t) {
  if (!(t >= 0.0)) return {0.0, true};
  if (t <= kPrimeSieveLimit) return {double(prime_prefix()[static_cast<std::size_t>(t)]), true};
  return {t / std::log(t), false};
}

}  // namespace jladder

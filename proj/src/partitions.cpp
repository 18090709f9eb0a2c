#include "jladder/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "jladder/constants.hpp"
#include "jladder/ladder.hpp"

namespace jladder {

ProperPartition make_partition(int n_plus_1, std::vector<int> parts) {
  if (n_plus_1 < 2) throw std::invalid_argument("partition: n+1 must be at least 2");
  long sum = 0;
  for (int a : parts) {
    if (a < 1 || a > n_plus_1 - 1)
      throw std::invalid_argument("partition: part " + std::to_string(a) + " outside [1, " +
                                  std::to_string(n_plus_1 - 1) + "]");
    sum += a;
  }
  if (sum != n_plus_1)
    throw std::invalid_argument("partition: parts sum to " + std::to_string(sum) + ", not " +
                                std::to_string(n_plus_1));
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  return {n_plus_1, std::move(parts)};
}

std::vector<BigInt> partition_counts(int n) {
  if (n < 0 || n > kMaxPartitionCount)
    throw std::invalid_argument("partition_count: n outside [0, 10000]");
  std::vector<BigInt> p(static_cast<std::size_t>(n) + 1);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    BigInt acc = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      if (g1 > m) break;
      const int g2 = k * (3 * k + 1) / 2;
      const bool plus = (k % 2) == 1;
      if (plus) {
        acc += p[m - g1];
        if (g2 <= m) acc += p[m - g2];
      } else {
        acc -= p[m - g1];
        if (g2 <= m) acc -= p[m - g2];
      }
    }
    p[m] = acc;
  }
  return p;
}

BigInt partition_count(int n) { return partition_counts(n).back(); }

std::vector<ProperPartition> enumerate_proper(int n_plus_1) {
  if (n_plus_1 < 2 || n_plus_1 > kMaxEnumeration)
    throw std::invalid_argument("enumerate_proper: n+1 outside [2, 40]");
  std::vector<ProperPartition> out;
  std::vector<int> cur;
  // Depth-first over non-increasing parts; largest first part first, so the
  // raw order is reverse lexicographic.
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      out.push_back({n_plus_1, cur});
      return;
    }
    for (int a = std::min(rest, cap); a >= 1; --a) {
      cur.push_back(a);
      rec(rest - a, a);
      cur.pop_back();
    }
  };
  rec(n_plus_1, n_plus_1 - 1);
  std::sort(out.begin(), out.end(),
            [](const ProperPartition& x, const ProperPartition& y) { return x.parts < y.parts; });
  return out;
}

double hr_estimate(int n) {
  if (n < 1) throw std::invalid_argument("hr_estimate: n must be positive");
  const double x = double(n);
  return std::exp(kHardyRamanujanK * std::sqrt(x)) / (4.0 * x * std::sqrt(3.0));
}

double weight(int a, double T, double U, const LadderTable& table) {
  if (a == 0) return 1.0;
  const double len = table.iter(T + U, a) - table.iter(T, a);
  if (!(len > 0.0)) throw DomainError("weight: iterated window has non-positive length");
  return U / len;
}

WeightSet weights(const ProperPartition& p, double T, double U, const LadderTable& table) {
  WeightSet w;
  for (int a : p.parts)
    if (!w.g.count(a)) w.g[a] = weight(a, T, U, table);
  w.g_top = weight(p.n_plus_1, T, U, table);
  return w;
}

}  // namespace jladder

#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace jladder {

class LadderTable;

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxPartitionCount = 10000;
inline constexpr int kMaxEnumeration = 40;

/// A partition of n+1 into parts in [1, n], stored non-increasing.
struct ProperPartition {
  int n_plus_1 = 0;
  std::vector<int> parts;

  bool operator==(const ProperPartition&) const = default;
};

/// Checks the invariants and returns the canonical (sorted) form.
/// Throws std::invalid_argument for the improper single-part partition,
/// for parts outside [1, n] and for a wrong sum.
ProperPartition make_partition(int n_plus_1, std::vector<int> parts);

/// p(n) by the pentagonal-number recurrence, 0 <= n <= 10^4.
BigInt partition_count(int n);

/// p(0..n) in one pass.
std::vector<BigInt> partition_counts(int n);

/// All proper partitions of n_plus_1 (2 <= n_plus_1 <= 40), lexicographically
/// sorted with parts in non-increasing order.
std::vector<ProperPartition> enumerate_proper(int n_plus_1);

/// Hardy-Ramanujan leading term e^{K sqrt n} / (4 n sqrt 3), K = pi sqrt(2/3).
double hr_estimate(int n);

/// Weight factors g_a = U / (phi^a(T+U) - phi^a(T)) for every distinct part
/// size a of the partition, plus g_top for a = n+1.
struct WeightSet {
  std::map<int, double> g;
  double g_top = 0.0;
};

WeightSet weights(const ProperPartition& p, double T, double U, const LadderTable& table);

/// g_a for a single iterate index; a = 0 gives exactly 1.
double weight(int a, double T, double U, const LadderTable& table);

}  // namespace jladder

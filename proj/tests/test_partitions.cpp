#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <set>
#include <sstream>

#include "jladder/ladder.hpp"
#include "jladder/partitions.hpp"
#include "test_common.hpp"

using namespace jladder;

namespace {

std::string str(const BigInt& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Partitions of n with parts <= cap, counted by plain recursion.
long brute_count(int n, int cap) {
  if (n == 0) return 1;
  long c = 0;
  for (int a = std::min(n, cap); a >= 1; --a) c += brute_count(n - a, a);
  return c;
}

}  // namespace

TEST_CASE("partition counts match mpmath.npartitions") {
  CHECK(str(partition_count(0)) == "1");
  CHECK(str(partition_count(6)) == "11");
  CHECK(str(partition_count(30)) == "5604");
  CHECK(str(partition_count(100)) == "190569292");
  CHECK(str(partition_count(200)) == "3972999029388");
  CHECK(str(partition_count(1000)) == "24061467864032622473692149727991");
}

TEST_CASE("the proper partitions of 200 number p(200) - 1") {
  CHECK(str(partition_count(200) - 1) == "3972999029387");
}

TEST_CASE("recurrence agrees with brute force up to 30") {
  const auto p = partition_counts(30);
  for (int n = 1; n <= 30; ++n) {
    CAPTURE(n);
    CHECK(p[n] == brute_count(n, n));
  }
}

TEST_CASE("partition_count range") {
  CHECK_THROWS_AS(partition_count(-1), std::invalid_argument);
  CHECK_THROWS_AS(partition_count(10001), std::invalid_argument);
  CHECK_NOTHROW(partition_count(10000));
}

TEST_CASE("enumeration: count, validity and order") {
  for (int m = 2; m <= 20; ++m) {
    CAPTURE(m);
    const auto all = enumerate_proper(m);
    CHECK(long(all.size()) == brute_count(m, m) - 1);
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto& p = all[i];
      CHECK(p.n_plus_1 == m);
      CHECK(std::is_sorted(p.parts.rbegin(), p.parts.rend()));
      CHECK(p.parts.front() <= m - 1);
      int sum = 0;
      for (int a : p.parts) sum += a;
      CHECK(sum == m);
      CHECK(seen.insert(p.parts).second);
      if (i > 0) CHECK(all[i - 1].parts < p.parts);
    }
  }
}

TEST_CASE("proper partitions of 6") {
  const auto all = enumerate_proper(6);
  REQUIRE(all.size() == 10);
  CHECK(all.front().parts == std::vector<int>{1, 1, 1, 1, 1, 1});
  CHECK(all.back().parts == std::vector<int>{5, 1});
  CHECK(std::find(all.begin(), all.end(), make_partition(6, {2, 2, 2})) != all.end());
  CHECK(std::find(all.begin(), all.end(), make_partition(6, {3, 3})) != all.end());
  CHECK_THROWS_AS(enumerate_proper(1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_proper(41), std::invalid_argument);
}

TEST_CASE("make_partition validates and canonicalizes") {
  CHECK(make_partition(6, {2, 3, 1}).parts == std::vector<int>{3, 2, 1});
  CHECK_THROWS_AS(make_partition(6, {6}), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(6, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(6, {0, 6}), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(1, {1}), std::invalid_argument);
}

TEST_CASE("Hardy-Ramanujan estimate") {
  const double r100 = hr_estimate(100) / 190569292.0;
  const double r200 = hr_estimate(200) / 3972999029388.0;
  CHECK(r100 >= 1.0);
  CHECK(r100 <= 1.06);
  CHECK(std::abs(r200 - 1.0) < std::abs(r100 - 1.0));
  CHECK(hr_estimate(6) == doctest::Approx(12.881927144).epsilon(1e-9));
  CHECK_THROWS_AS(hr_estimate(0), std::invalid_argument);
}

TEST_CASE("weight factors") {
  Ladder ladder(testing::shared_store());
  const double T = 1e4, U = max_window(T);
  const LadderTable table = build_table(ladder, 7000.0, T + U + 1.0, 0.05);
  CHECK(weight(0, T, U, table) == 1.0);
  for (int a = 1; a <= 6; ++a) {
    const double g = weight(a, T, U, table);
    CAPTURE(a);
    // Iterated windows are shorter, though not monotonically in a.
    CHECK(g > 1.0);
    CHECK(g == doctest::Approx(U / (table.iter(T + U, a) - table.iter(T, a))).epsilon(1e-15));
  }
  const WeightSet w = weights(make_partition(6, {2, 2, 2}), T, U, table);
  CHECK(w.g.size() == 1);
  CHECK(w.g.at(2) == weight(2, T, U, table));
  CHECK(w.g_top == weight(6, T, U, table));
}

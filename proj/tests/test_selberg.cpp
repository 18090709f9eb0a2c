#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jladder/selberg.hpp"
#include "jladder/zeta.hpp"
#include "test_common.hpp"

using namespace jladder;

namespace {

// Zero ordinates from mpmath.zetazero.
constexpr std::pair<int, double> kZeros[] = {
    {1, 14.134725141734694}, {2, 21.022039638771555}, {10, 49.773832477672302},
    {100, 236.52422966581620}, {649, 999.79157155741294}};

const SelbergTable& table_1e3() {
  static const SelbergTable t(1100.0);
  return t;
}

}  // namespace

TEST_CASE("zero ordinates against mpmath") {
  const ZeroList& z = table_1e3().zeros();
  for (const auto& [k, gamma] : kZeros) {
    CAPTURE(k);
    REQUIRE(z.ordinates.size() >= std::size_t(k));
    CHECK(std::abs(z.ordinates[k - 1] - gamma) < 1e-8);
    CHECK(z.refined[k - 1]);
  }
  for (std::size_t i = 1; i < z.ordinates.size(); ++i) CHECK(z.ordinates[i] > z.ordinates[i - 1]);
}

TEST_CASE("zero counts") {
  CHECK(count_zeros(10.0) == 0);
  CHECK(count_zeros(100.0) == 29);
  CHECK(count_zeros(1000.0) == 649);
  CHECK(count_zeros(5000.0) == 4520);
  const double t1 = kZeros[0].second;
  CHECK(count_zeros(t1 + 0.01) - count_zeros(t1 - 0.01) == 1);
  CHECK(zeros_up_to(table_1e3().zeros(), 100.0) == 29);
  CHECK_THROWS_AS(count_zeros(2e6), DomainError);
}

TEST_CASE("each ordinate brackets a sign change of Z") {
  const ZeroList z = find_zeros(5000.0, 5100.0);
  for (std::size_t i = 0; i < z.ordinates.size(); ++i) {
    const double g = z.ordinates[i], w = std::max(z.bracket_width[i], 1e-9);
    CHECK(z_function(g - w) * z_function(g + w) <= 0.0);
  }
}

TEST_CASE("chunked scans merge to the same list") {
  const ZeroList a = find_zeros(0.0, 600.0), b = find_zeros(600.0, 1100.0);
  const ZeroList m = merge(a, b);
  const ZeroList& whole = table_1e3().zeros();
  REQUIRE(m.ordinates.size() == whole.ordinates.size());
  for (std::size_t i = 0; i < m.ordinates.size(); ++i) CHECK(m.ordinates[i] == doctest::Approx(whole.ordinates[i]).epsilon(1e-12));
  CHECK_THROWS(merge(b, a));
}

TEST_CASE("S(t) against mpmath") {
  const ZeroList& z = table_1e3().zeros();
  CHECK(s_function(100.5, z) == doctest::Approx(-0.22282237475798393).epsilon(1e-9));
  CHECK(s_function(1000.3, z) == doctest::Approx(0.14168204278736976).epsilon(1e-9));
  const ZeroList z5 = find_zeros(5100.0);
  CHECK(s_function(5000.1, z5) == doctest::Approx(-0.43747948497288439).epsilon(1e-9));
  // N(100) = 29 through the counting relation.
  CHECK(s_function(100.0, z) == doctest::Approx(29.0 - theta(100.0) / 3.14159265358979323846 - 1.0));
}

TEST_CASE("S jumps by one at each zero") {
  const ZeroList& z = table_1e3().zeros();
  for (int k : {0, 5, 300}) {
    const double g = z.ordinates[k];
    CHECK(s_function(g - 1e-6, z) - s_function(g + 1e-6, z) == doctest::Approx(-1.0).epsilon(1e-4));
  }
  CHECK_THROWS_AS(s_function(z.ordinates[3], z), DomainError);
  CHECK(table_1e3().s(z.ordinates[3]) == doctest::Approx(s_function(z.ordinates[3] + 1e-9, z)).epsilon(1e-6));
}

TEST_CASE("S is bounded with mean near zero") {
  const ZeroList& z = table_1e3().zeros();
  double sum = 0.0;
  int count = 0;
  for (double t = 14.0; t < 1000.0; t += 0.0137) {
    const double s = table_1e3().s(t);
    CHECK(std::abs(s) < 3.0);
    sum += s;
    ++count;
  }
  CHECK(std::abs(sum / count) < 0.1);
  (void)z;
}

TEST_CASE("S_1") {
  const ZeroList& z = table_1e3().zeros();
  const SelbergTable& tab = table_1e3();
  CHECK(s1_function(0.0, z) == 0.0);
  CHECK(tab.s1(0.0) == 0.0);

  // Additivity with an independent quadrature of S on [50, 100].
  const double direct = integrate_adaptive([&](double t) { return tab.s(t); }, 50.0, 100.0, 1e-10,
                                           [&] {
                                             QuadOptions o;
                                             for (double g : z.ordinates)
                                               if (g > 50.0 && g < 100.0) o.breakpoints.push_back(g);
                                             return o;
                                           }())
                            .value;
  CHECK(std::abs(s1_function(100.0, z) - s1_function(50.0, z) - direct) < 1e-6);

  // Two tolerances agree.
  CHECK(std::abs(s1_function(100.0, z, 1e-6) - s1_function(100.0, z, 1e-10)) < 1e-5);
  // The prefix-sum table agrees with the direct integral.
  for (double T : {15.0, 100.0, 523.7, 999.9})
    CHECK(std::abs(tab.s1(T) - s1_function(T, z)) < 1e-8);

  // S_1' = S between zeros.
  for (int k : {3, 40, 200}) {
    const double t = 0.5 * (z.ordinates[k] + z.ordinates[k + 1]);
    const double h = 1e-4;
    CHECK(std::abs((tab.s1(t + h) - tab.s1(t - h)) / (2 * h) - tab.s(t)) < 1e-4);
  }
}

TEST_CASE("scan step") {
  CHECK(zero_scan_step(1e4) == doctest::Approx(0.5 * 2 * 3.14159265358979 / std::log(1e4 / (2 * 3.14159265358979))));
  CHECK(zero_scan_step(10.0) == zero_scan_step(50.0));
}

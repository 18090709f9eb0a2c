#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jladder/constants.hpp"
#include "jladder/ladder.hpp"
#include "test_common.hpp"

using namespace jladder;
using jladder::testing::rel_diff;

namespace {

// phi_1 from mpmath findroot on the A(T) oracle (c0 = 0).
constexpr double kPhi100 = 90.96872289868057;
constexpr double kPhi1000 = 934.28796593949822;

Ladder& ladder() {
  static Ladder l(jladder::testing::shared_store());
  return l;
}

const LadderTable& table() {
  static const LadderTable t = build_table(ladder(), 1000.0, 12000.0, 0.05);
  return t;
}

}  // namespace

TEST_CASE("solve_v inverts the defining equation") {
  for (double c0 : {0.0, 1.5, -2.0}) {
    for (double v : {7.0, 90.0, 1e4, 1e6}) {
      const double a = ladder_lhs(v, c0);
      CHECK(rel_diff(solve_v(a, c0), v) < 1e-14);
    }
  }
  CHECK(ladder_slope(10.0) == doctest::Approx(1 + kEulerC - kLnTwoPi + std::log(10.0)));
  CHECK_THROWS_AS(solve_v(ladder_lhs(2.0, 0.0), 0.0), NoBracketError);
}

TEST_CASE("phi_1 against mpmath") {
  CHECK(rel_diff(ladder().phi1(100.0), kPhi100) < 1e-9);
  CHECK(rel_diff(ladder().phi1(1000.0), kPhi1000) < 1e-9);
  CHECK_THROWS_AS(ladder().phi1(50.0), DomainError);
  CHECK(ladder().phi1_iter(5000.0, 0) == 5000.0);
  CHECK(ladder().phi1_iter(5000.0, 2) == ladder().phi1(ladder().phi1(5000.0)));
}

TEST_CASE("phi_1 is increasing and below the identity") {
  double prev = 0.0;
  for (double t = 100.0; t < 20000.0; t *= 1.37) {
    const double p = ladder().phi1(t);
    CHECK(p > prev);
    CHECK(p < t);
    prev = p;
  }
}

TEST_CASE("the implicit derivative matches finite differences") {
  for (double t : {1234.0, 7777.7}) {
    const double h = 1e-3;
    const double fd = (ladder().phi1(t + h) - ladder().phi1(t - h)) / (2 * h);
    CHECK(std::abs(ladder().derivative(t) - fd) < 1e-5 * (1 + std::abs(fd)));
    CHECK(ladder().derivative(t) == doctest::Approx(ladder_derivative(t, ladder().phi1(t))).epsilon(1e-14));
    CHECK(ladder().derivative(t) >= 0.0);
  }
}

TEST_CASE("table interpolation accuracy") {
  const LadderTable& tab = table();
  CHECK(tab.t_min() == 1000.0);
  CHECK(tab.t_max() >= 12000.0);
  CHECK(tab.max_interp_err() <= 1e-7 * tab.t_max());
  for (double t : {1000.0, 1000.025, 4321.123, 11999.9}) {
    CAPTURE(t);
    CHECK(std::abs(tab.phi(t) - ladder().phi1(t)) < 1e-7 * tab.t_max());
    CHECK(std::abs(tab.inverse(tab.phi(t)) - t) < 1e-8 * t);
  }
  for (std::size_t i = 1; i < tab.size(); ++i) CHECK(tab.phi_values()[i] > tab.phi_values()[i - 1]);
  CHECK_THROWS_AS(tab.phi(999.0), DomainError);
  CHECK_THROWS_AS(tab.phi(13000.0), DomainError);
  CHECK(tab.iter(11000.0, 0) == 11000.0);
  CHECK(tab.iter(11000.0, 2) == doctest::Approx(ladder().phi1_iter(11000.0, 2)).epsilon(1e-10));
  CHECK_THROWS_AS(tab.iter(1100.0, 3), DomainError);
}

TEST_CASE("table save and load") {
  const auto dir = jladder::testing::scratch_dir("ladder_table");
  const LadderTable small = build_table(ladder(), 2000.0, 2100.0, 0.05);
  save_table(small, dir / "t.json");
  const LadderTable back = load_table(dir / "t.json");
  CHECK(back.size() == small.size());
  CHECK(back.step() == small.step());
  CHECK(back.phi(2050.3) == small.phi(2050.3));
  CHECK(back.derivative(2050.3) == small.derivative(2050.3));
  CHECK_THROWS(load_table(dir / "missing.json"));
}

TEST_CASE("interval systems") {
  const double T = 10000.0, U = 100.0;
  CHECK(max_window(T) == doctest::Approx(T / std::pow(std::log(T), 2)));
  const IntervalSystem s = interval_system(T, U, 2, table());
  REQUIRE(s.endpoints.size() == 4);
  CHECK(s.lengths[0] == U);
  CHECK(s.gaps.size() == 3);
  CHECK(s.disjoint);
  for (std::size_t k = 0; k + 1 < s.endpoints.size(); ++k) {
    CHECK(s.endpoints[k + 1].second < s.endpoints[k].first);
    CHECK(s.lengths[k + 1] < s.lengths[k]);
  }
  CHECK_THROWS_AS(interval_system(T, 0.0, 1, table()), DomainError);
  CHECK_THROWS_AS(interval_system(T, 200.0, 1, table()), DomainError);
}

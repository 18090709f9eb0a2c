#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "jladder/constants.hpp"
#include "jladder/partitions.hpp"
#include "jladder/suite.hpp"
#include "jladder/verify.hpp"
#include "jladder/zeta.hpp"
#include "test_common.hpp"

using namespace jladder;
using jladder::testing::rel_diff;

namespace {

Ladder& ladder() {
  static Ladder l(testing::shared_store());
  return l;
}

// phi_1 on [~7200, 10120] at step 0.02; enough for six iterates of T = 1e4.
const LadderTable& table_1e4() {
  static const LadderTable t = covering_table(ladder(), 1e4, max_window(1e4), 6, 0.02);
  return t;
}

const LadderTable& table_1e5() {
  static const LadderTable t = covering_table(ladder(), 1e5, max_window(1e5), 3);
  return t;
}

std::shared_ptr<const SelbergTable> zeros_to(double upper) {
  static std::shared_ptr<const SelbergTable> s;
  if (!s || s->upper() < upper) s = std::make_shared<const SelbergTable>(upper);
  return s;
}

}  // namespace

TEST_CASE("product integral: trivial cases") {
  const auto& tab = table_1e4();
  CHECK(product_integral(1e4, 0.0, 2, WeightFunction::one(), tab) == 0.0);
  // n = 0 with F = 1 is the plain window integral.
  const double direct = hl_window(1e4, 50.0, 1e-10).value;
  CHECK(rel_diff(product_integral(1e4, 50.0, 0, WeightFunction::one(), tab), direct) < 1e-7);
  CHECK_THROWS_AS(product_integral(1e4, -1.0, 0, WeightFunction::one(), tab), DomainError);
}

TEST_CASE("product integral: self-convergence at n = 1") {
  const auto& tab = table_1e4();
  const QuadResult loose = product_integral_detail(1e4, 50.0, 1, WeightFunction::one(), tab, 1e-5);
  const QuadResult tight = product_integral_detail(1e4, 50.0, 1, WeightFunction::one(), tab, 1e-8);
  CHECK(rel_diff(loose.value, tight.value) < 1e-5);
  CHECK(tight.err_est <= 1e-8 * tight.value * 1.0001);
}

TEST_CASE("product integral: integrand is nonnegative") {
  const auto& tab = table_1e4();
  for (double t = 1e4; t < 1e4 + 20; t += 0.37) {
    double prod = 1.0, x = t;
    for (int k = 0; k <= 3; ++k) {
      prod *= abs_zeta_sq(x);
      x = tab.phi(x);
    }
    CHECK(prod >= 0.0);
  }
}

TEST_CASE("identity 6.16 at T = 1e4, U = 100") {
  const auto& tab = table_1e4();
  const WeightFunction ident =
      WeightFunction::make_custom("t", [](double t) { return t; }, [](double t) { return 0.5 * t * t; });
  CHECK(identity_6_16(1e4, 100.0, 0, WeightFunction::one(), tab) < 1e-5);
  CHECK(identity_6_16(1e4, 100.0, 1, WeightFunction::one(), tab) < 1e-5);
  CHECK(identity_6_16(1e4, 100.0, 1, ident, tab) < 1e-5);
  CHECK(identity_6_16(1e4, 100.0, 2, WeightFunction::one(), tab) < 1e-5);

  // The closed-form right side for F(t) = t.
  const IdentityResult r = identity_6_16_detail(1e4, 100.0, 1, ident, tab);
  const double a = tab.iter(1e4, 2), b = tab.iter(1e4 + 100.0, 2);
  CHECK(r.rhs == doctest::Approx(0.5 * (b * b - a * a)).epsilon(1e-12));

  const IdentityResult zero = identity_6_16_detail(1e4, 0.0, 1, WeightFunction::one(), tab);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
}

TEST_CASE("identity 6.16 with an S weight") {
  const auto& tab = table_1e4();
  const WeightFunction F = WeightFunction::s_pow(1, zeros_to(1.02e4));
  CHECK(identity_6_16(1e4, 30.0, 1, F, tab) < 1e-5);
}

TEST_CASE("chain rule") {
  const auto& tab = table_1e4();
  for (double t : {1e4 + 3.3, 1e4 + 41.7, 1e4 + 97.1}) {
    for (int n : {0, 1, 2}) {
      CAPTURE(t);
      CAPTURE(n);
      CHECK(chain_rule_check(t, n, tab) < 1e-3);
    }
  }
  CHECK(chain_rule_check(1e5 + 1.0, 2, table_1e5()) < 1e-3);

  // At a zero of Z both sides vanish.
  const double gamma = find_zeros(9990.0, 10010.0).ordinates.front();
  const ChainRuleResult z = chain_rule_detail(gamma, 1, tab);
  CHECK(std::abs(z.product) < 1e-6);
  CHECK(std::abs(z.finite_difference) < 1e-6);
}

TEST_CASE("theorem ratio and its corollary") {
  const auto& tab = table_1e4();
  const double T = 1e4, U = theorem_window(T);
  const RatioReport r0 = theorem_ratio(T, U, 0, WeightFunction::one(), tab);
  const auto hl = hl_window_ratio(T, U, tab);
  REQUIRE(hl.size() == 2);
  CHECK(hl[1].formula_id == "1.7");
  CHECK(rel_diff(r0.ratio, hl[1].ratio) < 1e-12);

  const RatioReport r1 = theorem_ratio(T, U, 1, WeightFunction::one(), tab);
  const RatioReport c1 = corollary_ratio(T, U, 1, WeightFunction::one(), tab);
  CHECK(c1.formula_id == "2.10");
  CHECK(c1.lhs == r1.lhs);
  CHECK(c1.rhs == r1.rhs);
  CHECK(c1.ratio == r1.ratio);
  CHECK(r1.ratio > 0.4);
  CHECK(r1.ratio < 2.5);
  CHECK_THROWS_AS(theorem_ratio(T, 2.0 * U, 1, WeightFunction::one(), tab), DomainError);
}

TEST_CASE("reduction consistency") {
  const ReductionResult res = reduction_consistency(1e4, theorem_window(1e4), table_1e4());
  CHECK(res.reports.size() == 4);
  CHECK(res.max_rel_diff < 1e-12);
}

TEST_CASE("factorizations") {
  const auto& tab = table_1e4();
  const double T = 1e4, U = theorem_window(T);
  const WeightFunction one = WeightFunction::one();

  SUBCASE("{1,1} is the degenerate l = 0 factorization") {
    const RatioReport f = factorization_ratio(make_partition(2, {1, 1}), T, U, one, tab);
    const RatioReport d = degenerate_factorization_ratio(T, U, 1, 0, one, tab);
    CHECK(f.formula_id == "3.7");
    CHECK(d.formula_id == "4.7");
    CHECK(rel_diff(f.ratio, d.ratio) < 1e-9);
  }
  SUBCASE("improper partition rejected") {
    CHECK_THROWS_AS(factorization_ratio({6, {6}}, T, U, one, tab), std::invalid_argument);
  }
  SUBCASE("cross partitions") {
    const auto p = make_partition(6, {2, 2, 2});
    const RatioReport same = cross_partition_ratio(p, p, T, U, tab);
    CHECK(same.ratio == 1.0);
    CHECK(same.meta["extrapolated"] == false);
    const RatioReport printed = cross_partition_ratio(p, make_partition(6, {3, 3}), T, U, tab, 1e-5);
    CHECK(printed.meta["extrapolated"] == false);
    CHECK(printed.meta["p1"] == nlohmann::json({2, 2, 2}));
    CHECK(printed.meta["p2"] == nlohmann::json({3, 3}));
    CHECK(std::abs(printed.ratio - 1.0) < 0.1);
    const RatioReport other =
        cross_partition_ratio(make_partition(4, {2, 2}), make_partition(4, {3, 1}), T, U, tab);
    CHECK(other.meta["extrapolated"] == true);
  }
  SUBCASE("full factorization reuses A(T) differences") {
    const RatioReport r = full_factorization_ratio(T, U, 1, one, tab, &testing::shared_store());
    CHECK(r.meta["component_store_rel_dev"].get<double>() < 1e-6);
    const RatioReport r0 = full_factorization_ratio(T, U, 0, one, tab);
    // With one factor and F = 1 the ratio collapses to chord / U.
    CHECK(rel_diff(r0.ratio, r0.meta["chord"].get<double>() / U) < 1e-6);
    CHECK(r0.meta["W"].get<double>() == doctest::Approx(hl_window_ratio(T, U, tab)[1].lhs).epsilon(1e-6));
  }
  SUBCASE("degenerate factorizations agree with each other") {
    std::vector<double> rhs;
    for (int l = 0; l <= 2; ++l) rhs.push_back(degenerate_factorization_ratio(T, U, 2, l, one, tab).rhs);
    for (double v : rhs) CHECK(std::abs(v / rhs[0] - 1.0) < 0.2);
    CHECK_THROWS_AS(degenerate_factorization_ratio(T, U, 1, 2, one, tab), std::invalid_argument);
  }
}

TEST_CASE("tau witnesses lie inside their components") {
  const auto& tab = table_1e4();
  const double T = 1e4, U = theorem_window(T);
  const TauWitness w = tau_witness(T, U, tab);
  for (int k = 0; k < 3; ++k) {
    CAPTURE(k);
    CHECK(w.tau[k] > tab.iter(T, k));
    CHECK(w.tau[k] < tab.iter(T + U, k));
  }
  CHECK(std::isfinite(w.report.ratio));
  CHECK(w.report.formula_id == "3.10");
}

TEST_CASE("Hardy-Littlewood windows") {
  const double T = 1e5;
  const auto& tab = table_1e5();
  const double U = std::pow(T, 0.4);
  const auto r = hl_window_ratio(T, U, tab);
  CHECK(std::isfinite(r[0].ratio));
  CHECK(std::isfinite(r[1].ratio));
  CHECK_THROWS_AS(hl_window_ratio(T, std::pow(T, 1.0 / 3.0), tab), DomainError);
  CHECK_NOTHROW(hl_window_ratio(T, std::pow(T, 1.0 / 3.0 + kMacroscopicEps) * 1.0001, tab));

  std::vector<double> global;
  for (double t : {1e3, 1e4, 1e5}) global.push_back(global_hl_ratio(t, testing::shared_store()).ratio);
  CHECK(global[0] < global[1]);
  CHECK(global[1] < global[2]);
  CHECK(global[2] < 1.0);
}

TEST_CASE("sixth-order diagnostic") {
  const double T = 1e4;
  const LadderTable tab = covering_table(ladder(), T, std::pow(T, 7.0 / 8.0), 1);
  const RatioReport a = sixth_order_ratio(T, tab, 1e-5);
  const RatioReport b = sixth_order_ratio(T, tab, 1e-7);
  CHECK(a.kind == ReportKind::diagnostic);
  CHECK(std::isfinite(a.ratio));
  CHECK(rel_diff(a.lhs, b.lhs) < 1e-5);
}

TEST_CASE("Selberg generalizations") {
  const double T = 1e4, U = selberg_window(T);
  const auto sel = zeros_to(T + U + 1.0);
  const auto& tab = table_1e4();
  const RatioReport s = selberg_gen_ratio(T, U, 1, 1, SelbergWhich::S, tab, sel);
  CHECK(s.formula_id == "5.5");
  CHECK(s.kind == ReportKind::diagnostic);
  CHECK(std::isfinite(s.ratio));
  CHECK(s.meta.contains("constant_note"));
  CHECK(s.meta["constant"].get<double>() == doctest::Approx(0.5));

  const WeightFunction F = WeightFunction::s_pow(1, sel);
  for (double t = T; t < T + 5; t += 0.013) CHECK(F(t) >= 0.0);

  // d_1 estimated at two heights stays within a factor 3.
  const RatioReport d4 = selberg_gen_ratio(T, U, 0, 1, SelbergWhich::S1, tab, sel);
  const double T5 = 1e5, U5 = selberg_window(T5);
  const RatioReport d5 =
      selberg_gen_ratio(T5, U5, 0, 1, SelbergWhich::S1, table_1e5(), zeros_to(T5 + U5 + 1.0));
  const double hi = std::max(d4.ratio, d5.ratio), lo = std::min(d4.ratio, d5.ratio);
  CHECK(lo > 0.0);
  CHECK(hi / lo < 3.0);
  CHECK_THROWS_AS(selberg_gen_ratio(T, U, 1, 0, SelbergWhich::S, tab, sel), std::invalid_argument);
}

TEST_CASE("TKA residual diagnostics") {
  const auto r = tka_reports({0.05, 0.02, 0.01});
  REQUIRE(r.size() == 3);
  for (const auto& x : r) {
    CHECK(std::isfinite(x.lhs));
    CHECK(std::isfinite(x.ratio));
    CHECK(x.kind == ReportKind::diagnostic);
  }
  CHECK(r[2].meta.contains("cauchy_shrinking"));
}

TEST_CASE("report plumbing") {
  SUBCASE("trend rule") {
    CHECK(trend_ok({0.8, 0.9, 0.95}));
    CHECK(trend_ok({0.8, 1.1, 1.05}));
    CHECK_FALSE(trend_ok({0.8, 0.95, 0.9}));
    CHECK_FALSE(trend_ok({0.3, 0.35}));
    CHECK(trend_ok({0.9, 0.9}));
  }
  SUBCASE("grouping") {
    std::vector<RatioReport> rs(3);
    for (int i = 0; i < 3; ++i) {
      rs[i].formula_id = "2.1";
      rs[i].T = std::pow(10.0, 4 + (2 - i));  // out of order on purpose
      rs[i].lhs = 0.9 + 0.03 * (2 - i);
      rs[i].rhs = 1.0;
      finish(rs[i]);
    }
    CHECK(apply_trends(rs));
    for (const auto& r : rs) CHECK(r.verdict == std::string(verdict::kTrendPass));
  }
  SUBCASE("csv and json") {
    RatioReport r;
    r.formula_id = "2.7";
    r.T = 1e4;
    r.U = 100;
    r.n = 1;
    r.k = 2;
    r.lhs = 1;
    r.rhs = 0;
    finish(r);
    CHECK(std::isnan(r.ratio));
    std::ostringstream os;
    write_csv(os, {r});
    CHECK(os.str() == "formula_id,T,U,n,F,lhs,rhs,ratio,verdict\n2.7[k=2],10000,100,1,one,1,0,nan,trend-pending\n");
    const auto j = to_json(r);
    CHECK(j["ratio"].is_null());
    CHECK(j["k"] == 2);
  }
}

#include <cmath>

#include <doctest.h>

#include "disparity/errors.hpp"
#include "disparity/significance.hpp"
#include "oracles.hpp"

using namespace disparity;

namespace {

GroupOutcomeTable table_2x2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return GroupOutcomeTable::from_aggregate({
      {GroupLabel{"R0"}, a, b},
      {GroupLabel{"R1"}, c, d},
  });
}

ContingencyView view_2x2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return ContingencyView::from_table(table_2x2(a, b, c, d));
}

}  // namespace

TEST_CASE("contingency view shape and totals") {
  ContingencyView v = view_2x2(12, 8, 5, 15);
  CHECK(v.k() == 2);
  CHECK(v.row_total(0) == 20);
  CHECK(v.column_total(0) == 17);
  CHECK(v.grand_total() == 40);

  GroupOutcomeTable t = GroupOutcomeTable::from_aggregate(
      {{GroupLabel{"A"}, 1, 1}, {GroupLabel{"B"}, 2, 2}, {GroupLabel{"C"}, 3, 3}});
  ContingencyView sub =
      ContingencyView::from_table(t, {GroupLabel{"C"}, GroupLabel{"A"}});
  CHECK(sub.k() == 2);
  CHECK(sub.groups()[0].str() == "C");
  CHECK(sub.cells()[0][0] == 3);
  CHECK_THROWS_AS(ContingencyView::from_table(t, {GroupLabel{"A"}, GroupLabel{"A"}}), DataError);
  CHECK_THROWS_AS(ContingencyView::from_table(t, {GroupLabel{"A"}}), DataError);
}

TEST_CASE("pearson chi-squared frozen fixture") {
  SignificanceResult r = pearson_chi_squared(view_2x2(12, 8, 5, 15));
  CHECK(std::fabs(r.statistic - 5.012787723785166) < 1e-9);
  CHECK(std::fabs(r.p_value - 0.025160759200408770) < 1e-12);
  CHECK(r.dof == 1);
  CHECK_FALSE(r.continuity_correction);
  CHECK(r.caveats.empty());  // all expected counts >= 5
}

TEST_CASE("pearson chi-squared matches the closed form on a sweep") {
  oracles::DeterministicCells rng(1701);
  for (int i = 0; i < 400; ++i) {
    const std::int64_t a = 1 + std::int64_t(rng.below(200));
    const std::int64_t b = 1 + std::int64_t(rng.below(200));
    const std::int64_t c = 1 + std::int64_t(rng.below(200));
    const std::int64_t d = 1 + std::int64_t(rng.below(200));
    SignificanceResult r = pearson_chi_squared(view_2x2(a, b, c, d));
    const double want = oracles::chi2_2x2_closed_form(double(a), double(b), double(c), double(d));
    CHECK(std::fabs(r.statistic - want) <= 1e-10 * std::max(1.0, want));
    CHECK(std::fabs(r.p_value - oracles::p_from_chi2_dof1(want)) <= 1e-10);
  }
}

TEST_CASE("pearson zero and proportional tables") {
  SignificanceResult r = pearson_chi_squared(view_2x2(10, 10, 10, 10));
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);
  SignificanceResult prop = pearson_chi_squared(view_2x2(10, 30, 20, 60));
  CHECK(prop.statistic == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(prop.p_value == 1.0);
}

TEST_CASE("pearson on k x 2 tables") {
  GroupOutcomeTable t = GroupOutcomeTable::from_aggregate({
      {GroupLabel{"A"}, 10, 10},
      {GroupLabel{"B"}, 20, 10},
      {GroupLabel{"C"}, 5, 15},
  });
  SignificanceResult r = pearson_chi_squared(ContingencyView::from_table(t));
  CHECK(r.dof == 2);
  CHECK(std::fabs(r.statistic - 25.0 / 3.0) < 1e-12);
  // dof 2 tail closed form: e^(-x/2)
  CHECK(std::fabs(r.p_value - std::exp(-r.statistic / 2.0)) < 1e-12);
}

TEST_CASE("pearson degenerate marginals") {
  CHECK_THROWS_AS(pearson_chi_squared(view_2x2(0, 5, 0, 9)), DataError);
  GroupOutcomeTable t = GroupOutcomeTable::from_aggregate(
      {{GroupLabel{"A"}, 1, 1}, {GroupLabel{"B"}, 0, 0}});
  CHECK_THROWS_AS(pearson_chi_squared(ContingencyView::from_table(t)), DataError);
}

TEST_CASE("pearson low expected cell caveat") {
  SignificanceResult r = pearson_chi_squared(view_2x2(2, 3, 3, 2));
  CHECK(r.caveats == std::vector<CaveatCode>{CaveatCode::low_expected_cell});
}

TEST_CASE("yates continuity correction") {
  SignificanceResult r = pearson_chi_squared(view_2x2(12, 8, 5, 15), true);
  CHECK(std::fabs(r.statistic - 3.6828644501278776) < 1e-9);
  CHECK(std::fabs(r.p_value - 0.05497432872169419) < 1e-12);
  CHECK(r.continuity_correction);

  SUBCASE("never exceeds the uncorrected statistic") {
    oracles::DeterministicCells rng(8);
    for (int i = 0; i < 200; ++i) {
      const std::int64_t a = 1 + std::int64_t(rng.below(40));
      const std::int64_t b = 1 + std::int64_t(rng.below(40));
      const std::int64_t c = 1 + std::int64_t(rng.below(40));
      const std::int64_t d = 1 + std::int64_t(rng.below(40));
      CHECK(pearson_chi_squared(view_2x2(a, b, c, d), true).statistic <=
            pearson_chi_squared(view_2x2(a, b, c, d), false).statistic + 1e-12);
    }
  }
  SUBCASE("clamps at zero instead of going negative") {
    // all |O - E| = 0.2 < 0.5
    SignificanceResult small = pearson_chi_squared(view_2x2(2, 1, 1, 1), true);
    CHECK(small.statistic == 0.0);
    CHECK(small.p_value == 1.0);
  }
  SUBCASE("rejected for k > 2") {
    GroupOutcomeTable t = GroupOutcomeTable::from_aggregate(
        {{GroupLabel{"A"}, 1, 1}, {GroupLabel{"B"}, 2, 2}, {GroupLabel{"C"}, 3, 3}});
    CHECK_THROWS_AS(pearson_chi_squared(ContingencyView::from_table(t), true), ConfigError);
  }
}

TEST_CASE("pearson statistic grows with imbalance at fixed margins") {
  // margins r1 = r2 = 20, c1 = c2 = 20; a from balanced to extreme
  double prev_stat = -1.0;
  double prev_p = 2.0;
  for (std::int64_t a = 10; a <= 20; ++a) {
    SignificanceResult r = pearson_chi_squared(view_2x2(a, 20 - a, 20 - a, a));
    CHECK(r.statistic >= prev_stat - 1e-12);
    CHECK(r.p_value <= prev_p + 1e-12);
    prev_stat = r.statistic;
    prev_p = r.p_value;
  }
}

TEST_CASE("fisher exact frozen fixtures") {
  SUBCASE("zero column marginal admits one table") {
    SignificanceResult r = fisher_exact_2x2(view_2x2(0, 5, 0, 5));
    CHECK(r.p_value == 1.0);
    CHECK(r.statistic == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("diagonal 5/5") {
    SignificanceResult r = fisher_exact_2x2(view_2x2(5, 0, 0, 5));
    CHECK(std::fabs(r.p_value - 2.0 / 252.0) < 1e-12);
  }
  SUBCASE("3,7,5,5") {
    SignificanceResult r = fisher_exact_2x2(view_2x2(3, 7, 5, 5));
    CHECK(std::fabs(r.p_value - 0.6499166468206716) < 1e-12);
    CHECK(std::fabs(r.p_value - oracles::fisher_two_sided_exact(3, 7, 5, 5)) < 1e-12);
    // observed point probability C(10,3) C(10,5) / C(20,8)
    CHECK(std::fabs(r.statistic - 30240.0 / 125970.0) < 1e-12);
    CHECK_FALSE(r.dof.has_value());
  }
  SUBCASE("4,6,5,5 includes every table") {
    CHECK(fisher_exact_2x2(view_2x2(4, 6, 5, 5)).p_value == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fisher exact oracle self-check") {
  CHECK(oracles::fisher_two_sided_exact(3, 7, 5, 5) ==
        doctest::Approx(81870.0 / 125970.0).epsilon(1e-15));
  CHECK(oracles::fisher_two_sided_exact(5, 0, 0, 5) ==
        doctest::Approx(2.0 / 252.0).epsilon(1e-15));
  CHECK(oracles::choose_exact(20, 8) == 125970);
  CHECK(oracles::choose_exact(25, 12) == 5200300);
}

TEST_CASE("fisher exact random sweep against the enumeration oracle") {
  oracles::DeterministicCells rng(23);
  for (int i = 0; i < 800; ++i) {
    const std::int64_t a = std::int64_t(rng.below(13));
    const std::int64_t b = std::int64_t(rng.below(13));
    const std::int64_t c = std::int64_t(rng.below(13));
    const std::int64_t d = std::int64_t(rng.below(13));
    if (a + b + c + d == 0) continue;
    const double want = oracles::fisher_two_sided_exact(a, b, c, d);
    const double got = fisher_exact_2x2(view_2x2(a, b, c, d)).p_value;
    CHECK(std::fabs(got - want) <= 1e-11);
  }
}

TEST_CASE("fisher exact is invariant under row and column swaps") {
  oracles::DeterministicCells rng(29);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t a = std::int64_t(rng.below(15));
    const std::int64_t b = std::int64_t(rng.below(15));
    const std::int64_t c = std::int64_t(rng.below(15));
    const std::int64_t d = std::int64_t(rng.below(15));
    if (a + b == 0 || c + d == 0 || a + b + c + d == 0) continue;
    const double base = fisher_exact_2x2(view_2x2(a, b, c, d)).p_value;
    CHECK(fisher_exact_2x2(view_2x2(c, d, a, b)).p_value == doctest::Approx(base).epsilon(1e-12));
    CHECK(fisher_exact_2x2(view_2x2(b, a, d, c)).p_value == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("fisher exact needs exactly two groups") {
  GroupOutcomeTable t = GroupOutcomeTable::from_aggregate(
      {{GroupLabel{"A"}, 1, 1}, {GroupLabel{"B"}, 2, 2}, {GroupLabel{"C"}, 3, 3}});
  CHECK_THROWS_AS(fisher_exact_2x2(ContingencyView::from_table(t)), ConfigError);
}

TEST_CASE("goodness of fit") {
  ReferenceDistribution half{{{GroupLabel{"W"}, 0.5}, {GroupLabel{"M"}, 0.5}}};
  SUBCASE("exact fit") {
    SignificanceResult r = goodness_of_fit({{GroupLabel{"W"}, 50}, {GroupLabel{"M"}, 50}}, half);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.dof == 1);
  }
  SUBCASE("strong imbalance") {
    SignificanceResult r = goodness_of_fit({{GroupLabel{"W"}, 10}, {GroupLabel{"M"}, 90}}, half);
    CHECK(r.statistic == doctest::Approx(64.0).epsilon(1e-12));
    CHECK(r.dof == 1);
    CHECK(std::fabs(r.p_value - std::erfc(std::sqrt(32.0))) < 1e-24);
    CHECK(std::fabs(r.p_value - 1.2441921148543568e-15) < 1e-24);
  }
  SUBCASE("missing observed group defaults to zero") {
    SignificanceResult r = goodness_of_fit({{GroupLabel{"W"}, 5}}, half);
    CHECK(r.statistic == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(goodness_of_fit({{GroupLabel{"Z"}, 5}}, half), DataError);
    CHECK_THROWS_AS(goodness_of_fit({{GroupLabel{"W"}, 0}, {GroupLabel{"M"}, 0}}, half),
                    DataError);
    CHECK_THROWS_AS(
        goodness_of_fit({{GroupLabel{"W"}, 1}, {GroupLabel{"W"}, 2}}, half), DataError);
    ReferenceDistribution single{{{GroupLabel{"A"}, 1.0}}};
    CHECK_THROWS_AS(goodness_of_fit({{GroupLabel{"A"}, 1}}, single), DataError);
  }
  SUBCASE("low expected cell caveat") {
    SignificanceResult r = goodness_of_fit({{GroupLabel{"W"}, 4}, {GroupLabel{"M"}, 4}}, half);
    CHECK(r.caveats == std::vector<CaveatCode>{CaveatCode::low_expected_cell});
  }
}

TEST_CASE("two-proportion z-test") {
  SUBCASE("balanced table") {
    SignificanceResult r = two_proportion_z(view_2x2(10, 10, 10, 10));
    CHECK(r.signed_z == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.statistic == 0.0);
  }
  SUBCASE("frozen fixture") {
    SignificanceResult r = two_proportion_z(view_2x2(12, 8, 5, 15));
    CHECK(std::fabs(std::fabs(*r.signed_z) - 2.2389255735252046) < 1e-9);
    CHECK(*r.signed_z > 0.0);  // rate 0.6 vs 0.25
    CHECK(std::fabs(r.p_value - 0.025160759200408770) < 1e-12);
    CHECK_FALSE(r.dof.has_value());
  }
  SUBCASE("z squared equals the uncorrected chi-squared statistic") {
    oracles::DeterministicCells rng(3);
    for (int i = 0; i < 300; ++i) {
      const std::int64_t a = 1 + std::int64_t(rng.below(60));
      const std::int64_t b = 1 + std::int64_t(rng.below(60));
      const std::int64_t c = 1 + std::int64_t(rng.below(60));
      const std::int64_t d = 1 + std::int64_t(rng.below(60));
      SignificanceResult z = two_proportion_z(view_2x2(a, b, c, d));
      SignificanceResult chi = pearson_chi_squared(view_2x2(a, b, c, d));
      CHECK(std::fabs(*z.signed_z * *z.signed_z - chi.statistic) <=
            1e-12 * std::max(1.0, chi.statistic));
      CHECK(z.statistic == chi.statistic);
    }
  }
  SUBCASE("sign follows the rate difference") {
    CHECK(*two_proportion_z(view_2x2(5, 15, 15, 5)).signed_z < 0.0);
    CHECK(*two_proportion_z(view_2x2(15, 5, 5, 15)).signed_z > 0.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(two_proportion_z(view_2x2(0, 5, 0, 9)), DataError);
    GroupOutcomeTable t = GroupOutcomeTable::from_aggregate(
        {{GroupLabel{"A"}, 1, 1}, {GroupLabel{"B"}, 2, 2}, {GroupLabel{"C"}, 3, 3}});
    CHECK_THROWS_AS(two_proportion_z(ContingencyView::from_table(t)), ConfigError);
  }
}

TEST_CASE("test method names round-trip") {
  for (TestMethod m : {TestMethod::pearson_chi2, TestMethod::fisher_exact,
                       TestMethod::goodness_of_fit, TestMethod::two_proportion_z}) {
    CHECK(parse_test_method(test_method_name(m)) == m);
  }
  CHECK_FALSE(parse_test_method("anova").has_value());
}

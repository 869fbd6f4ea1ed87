#include "disparity/significance.hpp"

#include <algorithm>
#include <cmath>

#include "disparity/errors.hpp"
#include "disparity/special_functions.hpp"

namespace disparity {

namespace {

constexpr double kTieSlack = 1e-7;

double square(double v) { return v * v; }

}  // namespace

std::string_view test_method_name(TestMethod method) {
  switch (method) {
    case TestMethod::pearson_chi2:
      return "pearson_chi2";
    case TestMethod::fisher_exact:
      return "fisher_exact";
    case TestMethod::goodness_of_fit:
      return "goodness_of_fit";
    case TestMethod::two_proportion_z:
      return "two_proportion_z";
  }
  throw Error("unknown test method");
}

std::optional<TestMethod> parse_test_method(std::string_view name) {
  if (name == "pearson_chi2") return TestMethod::pearson_chi2;
  if (name == "fisher_exact") return TestMethod::fisher_exact;
  if (name == "goodness_of_fit") return TestMethod::goodness_of_fit;
  if (name == "two_proportion_z") return TestMethod::two_proportion_z;
  return std::nullopt;
}

ContingencyView::ContingencyView(std::vector<GroupLabel> groups,
                                 std::vector<std::array<std::uint64_t, 2>> cells)
    : groups_(std::move(groups)), cells_(std::move(cells)) {
  if (cells_.size() < 2) {
    throw DataError("contingency view needs at least two groups");
  }
  if (grand_total() == 0) throw DataError("contingency view has no observations");
}

ContingencyView ContingencyView::from_table(const GroupOutcomeTable& table) {
  return from_table(table, table.groups());
}

ContingencyView ContingencyView::from_table(const GroupOutcomeTable& table,
                                            const std::vector<GroupLabel>& order) {
  std::vector<GroupLabel> groups;
  std::vector<std::array<std::uint64_t, 2>> cells;
  for (const GroupLabel& g : order) {
    for (const GroupLabel& seen : groups) {
      if (seen == g) throw DataError("duplicate group '" + g.str() + "' in view");
    }
    const GroupCounts& c = table.counts(g);
    groups.push_back(g);
    cells.push_back({c.favorable, c.unfavorable});
  }
  return ContingencyView(std::move(groups), std::move(cells));
}

std::uint64_t ContingencyView::column_total(std::size_t j) const {
  std::uint64_t total = 0;
  for (const auto& row : cells_) total += row[j];
  return total;
}

std::uint64_t ContingencyView::grand_total() const {
  return column_total(0) + column_total(1);
}

SignificanceResult pearson_chi_squared(const ContingencyView& view, bool yates) {
  const std::size_t k = view.k();
  if (yates && k != 2) {
    throw ConfigError("continuity correction applies to two groups only");
  }
  const double n = static_cast<double>(view.grand_total());
  const double col[2] = {static_cast<double>(view.column_total(0)),
                         static_cast<double>(view.column_total(1))};
  if (col[0] == 0.0 || col[1] == 0.0) {
    throw DataError("degenerate table: an outcome column total is zero");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (view.row_total(i) == 0) {
      throw DataError("degenerate table: group '" + view.groups()[i].str() +
                      "' has no observations");
    }
  }

  const double c = yates ? 0.5 : 0.0;
  double stat = 0.0;
  bool low_expected = false;
  for (std::size_t i = 0; i < k; ++i) {
    const double row = static_cast<double>(view.row_total(i));
    for (std::size_t j = 0; j < 2; ++j) {
      const double expected = row * col[j] / n;
      if (expected < 5.0) low_expected = true;
      const double observed = static_cast<double>(view.cells()[i][j]);
      const double diff = std::max(0.0, std::fabs(observed - expected) - c);
      stat += square(diff) / expected;
    }
  }

  SignificanceResult result;
  result.method = TestMethod::pearson_chi2;
  result.statistic = stat;
  result.dof = static_cast<int>(k) - 1;
  result.p_value = regularized_upper_gamma(static_cast<double>(*result.dof) / 2.0, stat / 2.0);
  result.continuity_correction = yates;
  if (low_expected) add_caveat(result.caveats, CaveatCode::low_expected_cell);
  return result;
}

SignificanceResult fisher_exact_2x2(const ContingencyView& view) {
  if (view.k() != 2) throw ConfigError("Fisher's exact test applies to two groups only");
  const std::uint64_t r1 = view.row_total(0);
  const std::uint64_t r2 = view.row_total(1);
  const std::uint64_t c1 = view.column_total(0);
  const std::uint64_t n = r1 + r2;

  // Support of the first cell given the margins.
  const std::uint64_t lo = c1 > r2 ? c1 - r2 : 0;
  const std::uint64_t hi = std::min(r1, c1);

  auto log_point_prob = [&](std::uint64_t a) {
    const double da = static_cast<double>(a);
    return log_choose(static_cast<double>(r1), da) +
           log_choose(static_cast<double>(r2), static_cast<double>(c1 - a)) -
           log_choose(static_cast<double>(n), static_cast<double>(c1));
  };

  const double log_observed = log_point_prob(view.cells()[0][0]);
  const double threshold = log_observed + std::log1p(kTieSlack);
  double p = 0.0;
  for (std::uint64_t a = lo; a <= hi; ++a) {
    const double lp = log_point_prob(a);
    if (lp <= threshold) p += std::exp(lp);
  }

  SignificanceResult result;
  result.method = TestMethod::fisher_exact;
  result.statistic = std::exp(log_observed);
  result.p_value = std::min(p, 1.0);
  return result;
}

SignificanceResult goodness_of_fit(
    const std::vector<std::pair<GroupLabel, std::uint64_t>>& observed,
    const ReferenceDistribution& reference) {
  if (reference.size() < 2) {
    throw DataError("goodness of fit needs at least two reference groups (dof would be 0)");
  }
  double n = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const auto& [label, count] = observed[i];
    if (!reference.contains(label)) {
      throw DataError("observed group '" + label.str() + "' is missing from the reference distribution");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (observed[j].first == label) {
        throw DataError("duplicate observed group '" + label.str() + "'");
      }
    }
    n += static_cast<double>(count);
  }
  if (n == 0.0) throw DataError("no observed counts");

  auto observed_count = [&](const GroupLabel& g) -> double {
    for (const auto& [label, count] : observed) {
      if (label == g) return static_cast<double>(count);
    }
    return 0.0;
  };

  double stat = 0.0;
  bool low_expected = false;
  for (const auto& [label, proportion] : reference.entries()) {
    const double expected = n * proportion;
    if (expected < 5.0) low_expected = true;
    stat += square(observed_count(label) - expected) / expected;
  }

  SignificanceResult result;
  result.method = TestMethod::goodness_of_fit;
  result.statistic = stat;
  result.dof = static_cast<int>(reference.size()) - 1;
  result.p_value = regularized_upper_gamma(static_cast<double>(*result.dof) / 2.0, stat / 2.0);
  if (low_expected) add_caveat(result.caveats, CaveatCode::low_expected_cell);
  return result;
}

SignificanceResult two_proportion_z(const ContingencyView& view) {
  if (view.k() != 2) throw ConfigError("two-proportion z-test applies to two groups only");
  SignificanceResult chi = pearson_chi_squared(view, false);

  const double rate0 =
      static_cast<double>(view.cells()[0][0]) / static_cast<double>(view.row_total(0));
  const double rate1 =
      static_cast<double>(view.cells()[1][0]) / static_cast<double>(view.row_total(1));
  const double magnitude = std::sqrt(chi.statistic);
  const double z = rate0 < rate1 ? -magnitude : magnitude;

  SignificanceResult result;
  result.method = TestMethod::two_proportion_z;
  result.statistic = chi.statistic;  // z^2
  result.p_value = std::erfc(magnitude / std::sqrt(2.0));
  result.signed_z = z;
  result.caveats = chi.caveats;
  return result;
}

}  // namespace disparity

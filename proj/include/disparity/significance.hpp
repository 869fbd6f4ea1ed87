#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "disparity/caveats.hpp"
#include "disparity/group_table.hpp"

namespace disparity {

enum class TestMethod { pearson_chi2, fisher_exact, goodness_of_fit, two_proportion_z };

std::string_view test_method_name(TestMethod method);
std::optional<TestMethod> parse_test_method(std::string_view name);

// A k x 2 contingency view over group counts: one row per group, columns
// favorable / unfavorable, rows in a fixed order.
class ContingencyView {
 public:
  // All groups of the table, in table order.
  static ContingencyView from_table(const GroupOutcomeTable& table);
  // The named groups only, in the given order.
  static ContingencyView from_table(const GroupOutcomeTable& table,
                                    const std::vector<GroupLabel>& order);

  const std::vector<GroupLabel>& groups() const noexcept { return groups_; }
  const std::vector<std::array<std::uint64_t, 2>>& cells() const noexcept { return cells_; }
  std::size_t k() const noexcept { return cells_.size(); }
  std::uint64_t row_total(std::size_t i) const { return cells_[i][0] + cells_[i][1]; }
  std::uint64_t column_total(std::size_t j) const;
  std::uint64_t grand_total() const;

 private:
  ContingencyView(std::vector<GroupLabel> groups,
                  std::vector<std::array<std::uint64_t, 2>> cells);
  std::vector<GroupLabel> groups_;
  std::vector<std::array<std::uint64_t, 2>> cells_;
};

struct SignificanceResult {
  TestMethod method;
  double statistic = 0.0;
  std::optional<int> dof;
  double p_value = 1.0;
  bool continuity_correction = false;
  // Signed z statistic; set by the two-proportion z-test only.
  std::optional<double> signed_z;
  std::vector<CaveatCode> caveats;
};

// Pearson chi-squared test of independence on a k x 2 view, dof = k - 1.
// With `yates` (k = 2 only) each |O - E| is reduced by 0.5, floored at 0.
// Adds LOW_EXPECTED_CELL when any expected count is below 5. Throws
// DataError when a row or column total is zero.
SignificanceResult pearson_chi_squared(const ContingencyView& view, bool yates = false);

// Fisher's exact test on a 2 x 2 view. Two-sided: sums hypergeometric point
// probabilities no larger than the observed one (relative slack 1e-7 for
// ties). The statistic is the observed point probability.
SignificanceResult fisher_exact_2x2(const ContingencyView& view);

// Chi-squared goodness of fit of observed counts against a reference
// categorical distribution, dof = #reference groups - 1.
SignificanceResult goodness_of_fit(
    const std::vector<std::pair<GroupLabel, std::uint64_t>>& observed,
    const ReferenceDistribution& reference);

// Two-proportion z-test on a 2 x 2 view (pooled variance). The statistic is
// the squared z, identical to the uncorrected chi-squared statistic; the
// sign of z follows rate(first row) - rate(second row).
SignificanceResult two_proportion_z(const ContingencyView& view);

}  // namespace disparity

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace disparity {

// A group label: trimmed, non-empty, compared byte-wise.
class GroupLabel {
 public:
  explicit GroupLabel(std::string_view text);

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const GroupLabel&, const GroupLabel&) = default;
  friend auto operator<=>(const GroupLabel&, const GroupLabel&) = default;

 private:
  std::string value_;
};

// Which outcome token counts as favorable. When `unfavorable_values` is
// absent, every non-favorable token is counted as unfavorable; when present,
// tokens outside the listed values are rejected. `flipped` records that the
// table this polarity describes was produced by flip_polarity().
class OutcomePolarity {
 public:
  explicit OutcomePolarity(
      std::string favorable_value,
      std::optional<std::vector<std::string>> unfavorable_values = std::nullopt,
      bool flipped = false);

  const std::string& favorable_value() const noexcept { return favorable_; }
  const std::optional<std::vector<std::string>>& unfavorable_values() const noexcept {
    return unfavorable_;
  }
  bool flipped() const noexcept { return flipped_; }

  // True when `token` is one of the unfavorable values; false when the
  // unfavorable set is implicit.
  bool is_listed_unfavorable(std::string_view token) const;

  OutcomePolarity with_flipped_mark() const;

  friend bool operator==(const OutcomePolarity&, const OutcomePolarity&) = default;

 private:
  std::string favorable_;
  std::optional<std::vector<std::string>> unfavorable_;
  bool flipped_ = false;
};

struct GroupCounts {
  std::uint64_t favorable = 0;
  std::uint64_t unfavorable = 0;

  std::uint64_t total() const noexcept { return favorable + unfavorable; }

  friend bool operator==(const GroupCounts&, const GroupCounts&) = default;
};

struct AggregateEntry {
  GroupLabel group;
  std::int64_t favorable = 0;
  std::int64_t unfavorable = 0;
};

// One row of record-level input: field name -> field value.
using Record = std::map<std::string, std::string>;

// How a table was ingested; carried into audit reports.
struct IngestionInfo {
  std::string source_format = "aggregate";  // "aggregate" or "records"
  std::vector<std::string> ignored_fields;
};

// Per-group favorable/unfavorable counts under a fixed outcome polarity.
// Group order is insertion order and is preserved through every operation.
class GroupOutcomeTable {
 public:
  // Tallies record-level rows. Throws DataError for empty input, a missing
  // field, or (with an explicit unfavorable set) an unknown outcome token.
  static GroupOutcomeTable from_rows(const std::vector<Record>& rows,
                                     const std::string& protected_field,
                                     const std::string& outcome_field,
                                     const OutcomePolarity& polarity);

  // Builds a table from already-aggregated counts. Throws DataError for
  // empty input, duplicate labels, negative counts, or an all-zero table.
  static GroupOutcomeTable from_aggregate(const std::vector<AggregateEntry>& entries,
                                          std::optional<OutcomePolarity> polarity = std::nullopt);

  const std::vector<GroupLabel>& groups() const noexcept { return order_; }
  bool contains(const GroupLabel& group) const;
  const GroupCounts& counts(const GroupLabel& group) const;

  // favorable / (favorable + unfavorable). Throws DataError for an unknown
  // group or a zero-total group.
  double selection_rate(const GroupLabel& group) const;

  // Swaps favorable and unfavorable in every group and marks the polarity
  // as flipped. Applying it twice restores the original counts.
  GroupOutcomeTable flip_polarity() const;

  const std::optional<OutcomePolarity>& polarity() const noexcept { return polarity_; }
  std::uint64_t grand_total() const noexcept;
  std::size_t group_count() const noexcept { return order_.size(); }

  friend bool operator==(const GroupOutcomeTable&, const GroupOutcomeTable&) = default;

 private:
  GroupOutcomeTable() = default;
  const GroupCounts* find(const GroupLabel& group) const;
  void add(const GroupLabel& group, std::uint64_t favorable, std::uint64_t unfavorable);
  void validate() const;

  std::vector<GroupLabel> order_;
  std::vector<GroupCounts> counts_;
  std::optional<OutcomePolarity> polarity_;
};

// A reference categorical distribution over group labels: proportions are
// strictly positive and sum to 1 within 1e-9.
class ReferenceDistribution {
 public:
  explicit ReferenceDistribution(std::vector<std::pair<GroupLabel, double>> proportions);

  const std::vector<std::pair<GroupLabel, double>>& entries() const noexcept {
    return entries_;
  }
  bool contains(const GroupLabel& group) const;
  double proportion(const GroupLabel& group) const;
  std::size_t size() const noexcept { return entries_.size(); }

  friend bool operator==(const ReferenceDistribution&, const ReferenceDistribution&) = default;

 private:
  std::vector<std::pair<GroupLabel, double>> entries_;
};

}  // namespace disparity

#include "disparity/group_table.hpp"

#include <algorithm>
#include <cmath>

#include "disparity/errors.hpp"

namespace disparity {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

GroupLabel::GroupLabel(std::string_view text) : value_(trim(text)) {
  if (value_.empty()) throw DataError("group label is empty");
}

OutcomePolarity::OutcomePolarity(std::string favorable_value,
                                 std::optional<std::vector<std::string>> unfavorable_values,
                                 bool flipped)
    : favorable_(std::move(favorable_value)),
      unfavorable_(std::move(unfavorable_values)),
      flipped_(flipped) {
  if (favorable_.empty()) throw ConfigError("favorable outcome value is empty");
  if (unfavorable_) {
    if (unfavorable_->empty()) {
      throw ConfigError("unfavorable outcome values must not be an empty list");
    }
    for (const std::string& v : *unfavorable_) {
      if (v == favorable_) {
        throw ConfigError("outcome value '" + v + "' is both favorable and unfavorable");
      }
    }
  }
}

bool OutcomePolarity::is_listed_unfavorable(std::string_view token) const {
  if (!unfavorable_) return false;
  return std::find(unfavorable_->begin(), unfavorable_->end(), token) != unfavorable_->end();
}

OutcomePolarity OutcomePolarity::with_flipped_mark() const {
  OutcomePolarity out = *this;
  out.flipped_ = !out.flipped_;
  return out;
}

GroupOutcomeTable GroupOutcomeTable::from_rows(const std::vector<Record>& rows,
                                               const std::string& protected_field,
                                               const std::string& outcome_field,
                                               const OutcomePolarity& polarity) {
  if (rows.empty()) throw DataError("no rows to tally");
  GroupOutcomeTable table;
  table.polarity_ = polarity;
  std::size_t row_number = 0;
  for (const Record& row : rows) {
    ++row_number;
    auto pit = row.find(protected_field);
    if (pit == row.end()) {
      throw DataError("row " + std::to_string(row_number) + " is missing field '" +
                      protected_field + "'");
    }
    auto oit = row.find(outcome_field);
    if (oit == row.end()) {
      throw DataError("row " + std::to_string(row_number) + " is missing field '" +
                      outcome_field + "'");
    }
    GroupLabel label{pit->second};
    bool favorable = oit->second == polarity.favorable_value();
    if (!favorable && polarity.unfavorable_values() &&
        !polarity.is_listed_unfavorable(oit->second)) {
      throw DataError("row " + std::to_string(row_number) + " has outcome '" + oit->second +
                      "' which is neither favorable nor a listed unfavorable value");
    }
    table.add(label, favorable ? 1 : 0, favorable ? 0 : 1);
  }
  table.validate();
  return table;
}

GroupOutcomeTable GroupOutcomeTable::from_aggregate(const std::vector<AggregateEntry>& entries,
                                                    std::optional<OutcomePolarity> polarity) {
  if (entries.empty()) throw DataError("no groups to tally");
  GroupOutcomeTable table;
  table.polarity_ = std::move(polarity);
  for (const AggregateEntry& e : entries) {
    if (e.favorable < 0 || e.unfavorable < 0) {
      throw DataError("negative count for group '" + e.group.str() + "'");
    }
    if (table.contains(e.group)) {
      throw DataError("duplicate group '" + e.group.str() + "'");
    }
    table.add(e.group, static_cast<std::uint64_t>(e.favorable),
              static_cast<std::uint64_t>(e.unfavorable));
  }
  table.validate();
  return table;
}

bool GroupOutcomeTable::contains(const GroupLabel& group) const {
  return find(group) != nullptr;
}

const GroupCounts& GroupOutcomeTable::counts(const GroupLabel& group) const {
  const GroupCounts* c = find(group);
  if (!c) throw DataError("unknown group '" + group.str() + "'");
  return *c;
}

double GroupOutcomeTable::selection_rate(const GroupLabel& group) const {
  const GroupCounts& c = counts(group);
  if (c.total() == 0) {
    throw DataError("group '" + group.str() + "' has no recorded outcomes");
  }
  return static_cast<double>(c.favorable) / static_cast<double>(c.total());
}

GroupOutcomeTable GroupOutcomeTable::flip_polarity() const {
  GroupOutcomeTable out;
  out.order_ = order_;
  out.counts_.reserve(counts_.size());
  for (const GroupCounts& c : counts_) {
    out.counts_.push_back(GroupCounts{c.unfavorable, c.favorable});
  }
  if (polarity_) out.polarity_ = polarity_->with_flipped_mark();
  return out;
}

std::uint64_t GroupOutcomeTable::grand_total() const noexcept {
  std::uint64_t n = 0;
  for (const GroupCounts& c : counts_) n += c.total();
  return n;
}

const GroupCounts* GroupOutcomeTable::find(const GroupLabel& group) const {
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (order_[i] == group) return &counts_[i];
  }
  return nullptr;
}

void GroupOutcomeTable::add(const GroupLabel& group, std::uint64_t favorable,
                            std::uint64_t unfavorable) {
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (order_[i] == group) {
      counts_[i].favorable += favorable;
      counts_[i].unfavorable += unfavorable;
      return;
    }
  }
  order_.push_back(group);
  counts_.push_back(GroupCounts{favorable, unfavorable});
}

void GroupOutcomeTable::validate() const {
  if (order_.empty()) throw DataError("table has no groups");
  if (grand_total() == 0) throw DataError("table has no recorded outcomes");
}

ReferenceDistribution::ReferenceDistribution(
    std::vector<std::pair<GroupLabel, double>> proportions)
    : entries_(std::move(proportions)) {
  if (entries_.empty()) throw ConfigError("reference distribution is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& [label, p] = entries_[i];
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw ConfigError("reference proportion for group '" + label.str() +
                        "' must be strictly positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[j].first == label) {
        throw ConfigError("duplicate group '" + label.str() + "' in reference distribution");
      }
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw ConfigError("reference proportions must sum to 1");
  }
}

bool ReferenceDistribution::contains(const GroupLabel& group) const {
  for (const auto& [label, p] : entries_) {
    if (label == group) return true;
  }
  return false;
}

double ReferenceDistribution::proportion(const GroupLabel& group) const {
  for (const auto& [label, p] : entries_) {
    if (label == group) return p;
  }
  throw DataError("unknown group '" + group.str() + "' in reference distribution");
}

}  // namespace disparity

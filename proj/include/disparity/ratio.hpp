#pragma once

#include <optional>
#include <vector>

#include "disparity/caveats.hpp"
#include "disparity/group_table.hpp"

namespace disparity {

enum class RatioKind { finite, infinite, undefined };

// A ratio of selection rates. Degenerate denominators do not produce IEEE
// infinities or NaNs; they are carried explicitly so that downstream
// threshold comparisons cannot silently misfire.
class RatioValue {
 public:
  static RatioValue finite(double value);
  static RatioValue infinite();
  static RatioValue undefined();

  RatioKind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == RatioKind::finite; }

  // Throws Error unless finite.
  double value() const;

  friend bool operator==(const RatioValue&, const RatioValue&) = default;

 private:
  RatioValue(RatioKind kind, double value) : kind_(kind), value_(value) {}
  RatioKind kind_;
  double value_;
};

enum class RatioVariant { raw, symmetrized, categorical_worst_case };

std::string_view ratio_variant_name(RatioVariant variant);

// Outcome of one ratio computation against a threshold. `flagged` is true
// only for a finite ratio at or below `threshold_tau`; degenerate ratios are
// never flagged, they are caveated instead.
struct DisparityAssessment {
  RatioVariant variant = RatioVariant::raw;
  RatioValue value = RatioValue::undefined();
  double threshold_tau = 0.8;
  bool flagged = false;
  std::optional<GroupLabel> comparison_group;
  std::optional<GroupLabel> reference_group;
  std::vector<GroupLabel> excluded_groups;
  std::vector<CaveatCode> caveats;
};

// rate(comparison) / rate(reference), flagged iff the ratio is finite and
// <= tau. 0/0 is undefined, r/0 with r > 0 is infinite; both carry
// DEGENERATE_RATES and are unflagged.
DisparityAssessment raw_ratio(const GroupOutcomeTable& table, const GroupLabel& comparison,
                              const GroupLabel& reference, double tau);

// min(r, 1/r) for the raw ratio r: direction-free, always in [0, 1] when
// finite, identical whichever way the two groups are passed.
DisparityAssessment symmetrized_ratio(const GroupOutcomeTable& table, const GroupLabel& a,
                                      const GroupLabel& b, double tau);

// Minimum selection rate over maximum selection rate across all groups with
// at least one recorded outcome. Zero-total groups are excluded and listed
// in `excluded_groups` with EXCLUDED_EMPTY_GROUPS.
DisparityAssessment categorical_worst_case(const GroupOutcomeTable& table, double tau);

// Open interval of raw ratios that the symmetrized rule leaves unflagged.
struct FairBand {
  double lower;
  double upper;
};

// (tau, 1/tau): a raw ratio r is unflagged under the symmetrized rule at
// threshold tau exactly when lower < r < upper.
FairBand fair_band(double tau);

}  // namespace disparity

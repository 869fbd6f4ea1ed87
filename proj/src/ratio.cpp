#include "disparity/ratio.hpp"

#include <algorithm>
#include <cmath>

#include "disparity/errors.hpp"

namespace disparity {

namespace {

void check_tau(double tau) {
  if (!std::isfinite(tau) || tau <= 0.0 || tau >= 1.0) {
    throw ConfigError("tau must be a fraction strictly between 0 and 1");
  }
}

bool finite_flag(const RatioValue& value, double tau) {
  return value.is_finite() && value.value() <= tau;
}

}  // namespace

RatioValue RatioValue::finite(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error("finite ratio value must be non-negative and finite");
  }
  return RatioValue(RatioKind::finite, value);
}

RatioValue RatioValue::infinite() { return RatioValue(RatioKind::infinite, 0.0); }

RatioValue RatioValue::undefined() { return RatioValue(RatioKind::undefined, 0.0); }

double RatioValue::value() const {
  if (kind_ != RatioKind::finite) throw Error("ratio has no finite value");
  return value_;
}

std::string_view ratio_variant_name(RatioVariant variant) {
  switch (variant) {
    case RatioVariant::raw:
      return "raw";
    case RatioVariant::symmetrized:
      return "symmetrized";
    case RatioVariant::categorical_worst_case:
      return "categorical_worst_case";
  }
  throw Error("unknown ratio variant");
}

DisparityAssessment raw_ratio(const GroupOutcomeTable& table, const GroupLabel& comparison,
                              const GroupLabel& reference, double tau) {
  check_tau(tau);
  if (comparison == reference) {
    throw DataError("comparison and reference groups must differ");
  }
  double rc = table.selection_rate(comparison);
  double rr = table.selection_rate(reference);

  DisparityAssessment out{RatioVariant::raw, RatioValue::undefined(), tau, false,
                          comparison,        reference,               {},  {}};
  if (rr == 0.0) {
    out.value = rc == 0.0 ? RatioValue::undefined() : RatioValue::infinite();
    add_caveat(out.caveats, CaveatCode::degenerate_rates);
  } else {
    out.value = RatioValue::finite(rc / rr);
    if (rc == 0.0) add_caveat(out.caveats, CaveatCode::degenerate_rates);
  }
  out.flagged = finite_flag(out.value, tau);
  return out;
}

DisparityAssessment symmetrized_ratio(const GroupOutcomeTable& table, const GroupLabel& a,
                                      const GroupLabel& b, double tau) {
  check_tau(tau);
  if (a == b) throw DataError("comparison and reference groups must differ");
  double ra = table.selection_rate(a);
  double rb = table.selection_rate(b);

  DisparityAssessment out{RatioVariant::symmetrized, RatioValue::undefined(), tau, false, a, b,
                          {},                        {}};
  if (ra == 0.0 && rb == 0.0) {
    out.value = RatioValue::undefined();
    add_caveat(out.caveats, CaveatCode::degenerate_rates);
  } else if (ra == 0.0 || rb == 0.0) {
    // min of 0 and an infinite reciprocal.
    out.value = RatioValue::finite(0.0);
    add_caveat(out.caveats, CaveatCode::degenerate_rates);
  } else {
    out.value = RatioValue::finite(std::min(ra / rb, rb / ra));
  }
  out.flagged = finite_flag(out.value, tau);
  return out;
}

DisparityAssessment categorical_worst_case(const GroupOutcomeTable& table, double tau) {
  check_tau(tau);
  DisparityAssessment out{RatioVariant::categorical_worst_case,
                          RatioValue::undefined(),
                          tau,
                          false,
                          std::nullopt,
                          std::nullopt,
                          {},
                          {}};
  std::vector<GroupLabel> included;
  for (const GroupLabel& g : table.groups()) {
    if (table.counts(g).total() == 0) {
      out.excluded_groups.push_back(g);
    } else {
      included.push_back(g);
    }
  }
  if (included.size() < 2) {
    throw DataError("worst-case ratio needs at least two groups with recorded outcomes");
  }
  if (!out.excluded_groups.empty()) {
    add_caveat(out.caveats, CaveatCode::excluded_empty_groups);
  }

  const GroupLabel* min_group = &included.front();
  const GroupLabel* max_group = &included.front();
  double min_rate = table.selection_rate(included.front());
  double max_rate = min_rate;
  for (std::size_t i = 1; i < included.size(); ++i) {
    double r = table.selection_rate(included[i]);
    if (r < min_rate) {
      min_rate = r;
      min_group = &included[i];
    }
    if (r > max_rate) {
      max_rate = r;
      max_group = &included[i];
    }
  }
  out.comparison_group = *min_group;
  out.reference_group = *max_group;
  if (max_rate == 0.0) {
    out.value = RatioValue::undefined();
    add_caveat(out.caveats, CaveatCode::degenerate_rates);
  } else {
    out.value = RatioValue::finite(min_rate / max_rate);
    if (min_rate == 0.0) add_caveat(out.caveats, CaveatCode::degenerate_rates);
  }
  out.flagged = finite_flag(out.value, tau);
  return out;
}

FairBand fair_band(double tau) {
  check_tau(tau);
  return FairBand{tau, 1.0 / tau};
}

}  // namespace disparity

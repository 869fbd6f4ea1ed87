#include "disparity/audit.hpp"

#include <algorithm>
#include <cmath>

#include "disparity/errors.hpp"

namespace disparity {

std::string_view evidence_status_name(EvidenceStatus status) {
  switch (status) {
    case EvidenceStatus::no_evidence:
      return "no_evidence";
    case EvidenceStatus::ratio_flag_only:
      return "ratio_flag_only";
    case EvidenceStatus::statistical_evidence_only:
      return "statistical_evidence_only";
    case EvidenceStatus::ratio_and_statistical:
      return "ratio_and_statistical";
  }
  throw Error("unknown evidence status");
}

EvidenceStatus classify_evidence(bool flagged_any, bool significant_any) {
  if (flagged_any && significant_any) return EvidenceStatus::ratio_and_statistical;
  if (flagged_any) return EvidenceStatus::ratio_flag_only;
  if (significant_any) return EvidenceStatus::statistical_evidence_only;
  return EvidenceStatus::no_evidence;
}

std::string_view regulatory_context_text() {
  return "The four-fifths threshold comes from 29 CFR §1607.4(D), the Uniform "
         "Guidelines on Employee Selection Procedures provision on adverse "
         "impact. The guideline treats a selection rate below four-fifths of "
         "the highest group's rate as what federal enforcement agencies will "
         "\"generally\" regard as evidence of adverse impact in employment "
         "selection, and it makes explicit exceptions for small samples and "
         "for smaller differences that are statistically significant.";
}

std::string_view disclaimer_text() {
  return "Every number in this report is a selection-rate ratio or a test "
         "statistic, not a disparate-impact finding. Such a finding is a "
         "legal conclusion that depends on statistical evidence together "
         "with causation and the failure of available defenses, and courts "
         "weigh statistical significance more heavily than any fixed ratio "
         "threshold.";
}

bool AuditReport::any_flagged() const {
  for (const PairwiseEvidence& pair : evidence.pairwise) {
    if (pair.raw.flagged || pair.symmetrized.flagged) return true;
  }
  return evidence.overall.flagged;
}

bool AuditReport::any_significant() const {
  for (const TestEvidence& test : evidence.tests) {
    if (test.result.p_value < config.alpha) return true;
  }
  return false;
}

AuditReport run_audit(const GroupOutcomeTable& table, const AuditConfig& config,
                      const IngestionInfo& input) {
  config.validate();
  if (!config.reference_group) throw ConfigError("reference_group is required");
  const GroupLabel& reference = *config.reference_group;
  if (!table.contains(reference)) {
    throw DataError("reference group '" + reference.str() + "' is not in the data");
  }
  if (table.counts(reference).total() == 0) {
    throw DataError("reference group '" + reference.str() + "' has no recorded outcomes");
  }

  std::vector<GroupLabel> included;
  for (const GroupLabel& g : table.groups()) {
    if (table.counts(g).total() > 0) included.push_back(g);
  }
  if (included.size() < 2) {
    throw DataError("an audit needs at least two groups with recorded outcomes");
  }

  std::vector<GroupLabel> comparisons;
  if (config.comparison_groups) {
    for (const GroupLabel& g : *config.comparison_groups) {
      if (!table.contains(g)) {
        throw DataError("comparison group '" + g.str() + "' is not in the data");
      }
      if (g == reference) {
        throw DataError("comparison group '" + g.str() + "' is the reference group");
      }
      if (table.counts(g).total() == 0) {
        throw DataError("comparison group '" + g.str() + "' has no recorded outcomes");
      }
      comparisons.push_back(g);
    }
  } else {
    for (const GroupLabel& g : included) {
      if (!(g == reference)) comparisons.push_back(g);
    }
  }

  AuditReport report;
  report.config = config;
  report.input = input;

  for (const GroupLabel& g : table.groups()) {
    const GroupCounts& c = table.counts(g);
    GroupSummary summary{g, c.favorable, c.unfavorable, std::nullopt};
    if (c.total() > 0) summary.selection_rate = table.selection_rate(g);
    report.groups.push_back(std::move(summary));
  }

  for (const GroupLabel& g : comparisons) {
    PairwiseEvidence pair{g, reference, raw_ratio(table, g, reference, config.tau),
                          symmetrized_ratio(table, g, reference, config.tau)};
    report.evidence.pairwise.push_back(std::move(pair));
  }
  report.evidence.overall = categorical_worst_case(table, config.tau);

  for (TestMethod method : config.tests) {
    switch (method) {
      case TestMethod::pearson_chi2: {
        ContingencyView view = ContingencyView::from_table(table, included);
        TestEvidence evidence{pearson_chi_squared(view, config.yates), included};
        report.evidence.tests.push_back(std::move(evidence));
        break;
      }
      case TestMethod::fisher_exact: {
        for (const GroupLabel& g : comparisons) {
          std::vector<GroupLabel> pair{g, reference};
          ContingencyView view = ContingencyView::from_table(table, pair);
          report.evidence.tests.push_back(TestEvidence{fisher_exact_2x2(view), pair});
        }
        break;
      }
      case TestMethod::two_proportion_z: {
        for (const GroupLabel& g : comparisons) {
          std::vector<GroupLabel> pair{g, reference};
          ContingencyView view = ContingencyView::from_table(table, pair);
          report.evidence.tests.push_back(TestEvidence{two_proportion_z(view), pair});
        }
        break;
      }
      case TestMethod::goodness_of_fit: {
        if (!config.reference_distribution) {
          throw ConfigError("goodness_of_fit requires a reference_distribution");
        }
        std::vector<std::pair<GroupLabel, std::uint64_t>> observed;
        for (const GroupLabel& g : table.groups()) {
          observed.emplace_back(g, table.counts(g).favorable);
        }
        TestEvidence evidence{goodness_of_fit(observed, *config.reference_distribution),
                              table.groups()};
        report.evidence.tests.push_back(std::move(evidence));
        break;
      }
    }
  }

  const bool flagged_any = report.any_flagged();
  const bool significant_any = report.any_significant();
  report.evidence.evidence_status = classify_evidence(flagged_any, significant_any);

  add_caveat(report.caveats, CaveatCode::not_a_legal_finding);
  if (flagged_any && !significant_any) {
    add_caveat(report.caveats, CaveatCode::small_numbers);
  }
  if (!flagged_any && significant_any) {
    add_caveat(report.caveats, CaveatCode::smaller_differences_significant);
  }
  for (const PairwiseEvidence& pair : report.evidence.pairwise) {
    report.caveats = merge_caveats(report.caveats, pair.raw.caveats);
    report.caveats = merge_caveats(report.caveats, pair.symmetrized.caveats);
  }
  report.caveats = merge_caveats(report.caveats, report.evidence.overall.caveats);
  for (const TestEvidence& test : report.evidence.tests) {
    report.caveats = merge_caveats(report.caveats, test.result.caveats);
  }
  return report;
}

std::vector<RankedAlternative> rank_alternatives(const std::vector<CandidateOutcome>& candidates,
                                                 double utility_floor,
                                                 const AuditConfig& config) {
  config.validate();
  if (candidates.empty()) throw DataError("no candidates to rank");
  if (!std::isfinite(utility_floor)) throw ConfigError("utility floor must be finite");
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].label.empty()) throw DataError("candidate label is empty");
    if (!std::isfinite(candidates[i].utility)) {
      throw DataError("candidate '" + candidates[i].label + "' has a non-finite utility");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (candidates[j].label == candidates[i].label) {
        throw DataError("duplicate candidate label '" + candidates[i].label + "'");
      }
    }
  }

  std::vector<RankedAlternative> kept;
  for (const CandidateOutcome& candidate : candidates) {
    if (candidate.utility < utility_floor) continue;
    DisparityAssessment assessment = categorical_worst_case(candidate.table, config.tau);
    kept.push_back(RankedAlternative{candidate.label, assessment.value, candidate.utility});
  }
  if (kept.empty()) throw DataError("no candidate meets the utility floor");

  auto kind_rank = [](const RatioValue& v) {
    switch (v.kind()) {
      case RatioKind::finite:
        return 0;
      case RatioKind::infinite:
        return 1;
      case RatioKind::undefined:
        return 2;
    }
    return 3;
  };
  std::stable_sort(kept.begin(), kept.end(),
                   [&](const RankedAlternative& a, const RankedAlternative& b) {
                     int ka = kind_rank(a.worst_case);
                     int kb = kind_rank(b.worst_case);
                     if (ka != kb) return ka < kb;
                     if (ka == 0 && a.worst_case.value() != b.worst_case.value()) {
                       return a.worst_case.value() > b.worst_case.value();
                     }
                     if (a.utility != b.utility) return a.utility > b.utility;
                     return a.label < b.label;
                   });
  return kept;
}

}  // namespace disparity

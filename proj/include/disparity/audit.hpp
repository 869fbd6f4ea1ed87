#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disparity/caveats.hpp"
#include "disparity/group_table.hpp"
#include "disparity/ratio.hpp"
#include "disparity/significance.hpp"

namespace disparity {

// Audit configuration. `reference_group` must be set before running an
// audit; everything else has a usable default. `comparison_groups` absent
// means: every group with recorded outcomes except the reference.
struct AuditConfig {
  std::optional<std::string> protected_field;
  std::optional<std::string> outcome_field;
  std::optional<OutcomePolarity> polarity;
  std::optional<GroupLabel> reference_group;
  std::optional<std::vector<GroupLabel>> comparison_groups;
  std::optional<ReferenceDistribution> reference_distribution;
  double tau = 0.8;
  double alpha = 0.05;
  std::vector<TestMethod> tests = {TestMethod::pearson_chi2, TestMethod::fisher_exact};
  bool yates = false;
  bool fail_on_flag = false;

  // Parses the JSON config document. Unknown keys, wrong types and
  // out-of-range values raise ConfigError.
  static AuditConfig from_json_text(const std::string& text);

  void validate() const;
};

enum class EvidenceStatus {
  no_evidence,
  ratio_flag_only,
  statistical_evidence_only,
  ratio_and_statistical,
};

std::string_view evidence_status_name(EvidenceStatus status);

// Truth table over (any ratio flagged, any test significant).
EvidenceStatus classify_evidence(bool flagged_any, bool significant_any);

// Raw and symmetrized assessments for one comparison group against the
// reference group.
struct PairwiseEvidence {
  GroupLabel comparison_group;
  GroupLabel reference_group;
  DisparityAssessment raw;
  DisparityAssessment symmetrized;
};

// One executed significance test and the groups it covered.
struct TestEvidence {
  SignificanceResult result;
  std::vector<GroupLabel> groups;
};

struct PrimaFacieEvidence {
  std::vector<PairwiseEvidence> pairwise;
  DisparityAssessment overall;  // categorical worst case over the table
  std::vector<TestEvidence> tests;
  EvidenceStatus evidence_status = EvidenceStatus::no_evidence;
};

struct GroupSummary {
  GroupLabel group;
  std::uint64_t favorable = 0;
  std::uint64_t unfavorable = 0;
  std::optional<double> selection_rate;  // absent for zero-total groups
};

// The full audit result. The fixed `regulatory_context` and `disclaimer`
// texts are part of every report; NOT_A_LEGAL_FINDING is always present in
// `caveats`.
struct AuditReport {
  AuditConfig config;
  IngestionInfo input;
  std::vector<GroupSummary> groups;
  PrimaFacieEvidence evidence;
  std::vector<CaveatCode> caveats;

  bool any_flagged() const;
  bool any_significant() const;  // against config.alpha
};

std::string_view regulatory_context_text();
std::string_view disclaimer_text();

// Runs the configured ratio metrics and significance tests over the table
// and assembles the report. Requires a reference group that exists and has
// recorded outcomes, and at least two groups with recorded outcomes.
AuditReport run_audit(const GroupOutcomeTable& table, const AuditConfig& config,
                      const IngestionInfo& input = IngestionInfo{});

// A candidate decision policy: its outcome table and its utility score.
struct CandidateOutcome {
  std::string label;
  GroupOutcomeTable table;
  double utility = 0.0;
};

struct RankedAlternative {
  std::string label;
  RatioValue worst_case;
  double utility = 0.0;
};

// Keeps candidates with utility >= utility_floor and orders them by
// worst-case ratio, best (closest to parity) first; ties break by higher
// utility, then label. Throws DataError when no candidate passes the floor.
std::vector<RankedAlternative> rank_alternatives(const std::vector<CandidateOutcome>& candidates,
                                                 double utility_floor,
                                                 const AuditConfig& config);

}  // namespace disparity

#include "disparity/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "disparity/errors.hpp"

namespace disparity {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kReportTitle = "Selection-rate ratio audit";

std::string ratio_kind_name(RatioKind kind) {
  switch (kind) {
    case RatioKind::finite:
      return "finite";
    case RatioKind::infinite:
      return "infinite";
    case RatioKind::undefined:
      return "undefined";
  }
  throw Error("unknown ratio kind");
}

ordered_json caveat_list(const std::vector<CaveatCode>& codes) {
  ordered_json arr = ordered_json::array();
  for (CaveatCode code : codes) arr.push_back(std::string(caveat_code_name(code)));
  return arr;
}

ordered_json label_list(const std::vector<GroupLabel>& groups) {
  ordered_json arr = ordered_json::array();
  for (const GroupLabel& g : groups) arr.push_back(g.str());
  return arr;
}

std::string join_labels(const std::vector<GroupLabel>& groups, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i > 0) out += sep;
    out += groups[i].str();
  }
  return out;
}

std::string join_caveats(const std::vector<CaveatCode>& codes) {
  if (codes.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::string(caveat_code_name(codes[i]));
  }
  return out;
}

std::string yes_no(bool v) { return v ? "yes" : "no"; }

std::string ratio_value_text(const RatioValue& value) {
  switch (value.kind()) {
    case RatioKind::finite:
      return format_number(value.value());
    case RatioKind::infinite:
      return "infinite";
    case RatioKind::undefined:
      return "undefined";
  }
  throw Error("unknown ratio kind");
}

}  // namespace

double round_significant(double value, int digits) {
  if (!std::isfinite(value)) return value;
  if (value == 0.0) return 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

std::string format_number(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

ordered_json config_to_json(const AuditConfig& config) {
  ordered_json doc;
  doc["protected_field"] =
      config.protected_field ? ordered_json(*config.protected_field) : ordered_json(nullptr);
  doc["outcome_field"] =
      config.outcome_field ? ordered_json(*config.outcome_field) : ordered_json(nullptr);
  if (config.polarity) {
    ordered_json pol;
    pol["favorable"] = config.polarity->favorable_value();
    if (config.polarity->unfavorable_values()) {
      pol["unfavorable"] = *config.polarity->unfavorable_values();
    } else {
      pol["unfavorable"] = nullptr;
    }
    pol["flipped"] = config.polarity->flipped();
    doc["polarity"] = std::move(pol);
  } else {
    doc["polarity"] = nullptr;
  }
  doc["reference_group"] =
      config.reference_group ? ordered_json(config.reference_group->str()) : ordered_json(nullptr);
  if (config.comparison_groups) {
    doc["comparison_groups"] = label_list(*config.comparison_groups);
  } else {
    doc["comparison_groups"] = "all_others";
  }
  if (config.reference_distribution) {
    ordered_json dist;
    for (const auto& [label, p] : config.reference_distribution->entries()) {
      dist[label.str()] = round_significant(p);
    }
    doc["reference_distribution"] = std::move(dist);
  } else {
    doc["reference_distribution"] = nullptr;
  }
  doc["tau"] = round_significant(config.tau);
  doc["alpha"] = round_significant(config.alpha);
  ordered_json tests = ordered_json::array();
  for (TestMethod method : config.tests) tests.push_back(std::string(test_method_name(method)));
  doc["tests"] = std::move(tests);
  doc["yates"] = config.yates;
  doc["fail_on_flag"] = config.fail_on_flag;
  return doc;
}

ordered_json assessment_to_json(const DisparityAssessment& assessment) {
  ordered_json doc;
  doc["variant"] = std::string(ratio_variant_name(assessment.variant));
  doc["kind"] = ratio_kind_name(assessment.value.kind());
  doc["value"] = assessment.value.is_finite()
                     ? ordered_json(round_significant(assessment.value.value()))
                     : ordered_json(nullptr);
  doc["threshold_tau"] = round_significant(assessment.threshold_tau);
  if (assessment.variant == RatioVariant::symmetrized) {
    FairBand band = fair_band(assessment.threshold_tau);
    doc["fair_band"] = ordered_json{{"lower", round_significant(band.lower)},
                                    {"upper", round_significant(band.upper)}};
  }
  doc["flagged"] = assessment.flagged;
  doc["comparison_group"] = assessment.comparison_group
                                ? ordered_json(assessment.comparison_group->str())
                                : ordered_json(nullptr);
  doc["reference_group"] = assessment.reference_group
                               ? ordered_json(assessment.reference_group->str())
                               : ordered_json(nullptr);
  doc["excluded_groups"] = label_list(assessment.excluded_groups);
  doc["caveats"] = caveat_list(assessment.caveats);
  return doc;
}

ordered_json test_to_json(const TestEvidence& test) {
  const SignificanceResult& r = test.result;
  ordered_json doc;
  doc["method"] = std::string(test_method_name(r.method));
  doc["groups"] = label_list(test.groups);
  doc["statistic"] = round_significant(r.statistic);
  doc["dof"] = r.dof ? ordered_json(*r.dof) : ordered_json(nullptr);
  doc["p_value"] = round_significant(r.p_value);
  doc["continuity_correction"] = r.continuity_correction;
  doc["signed_z"] =
      r.signed_z ? ordered_json(round_significant(*r.signed_z)) : ordered_json(nullptr);
  doc["caveats"] = caveat_list(r.caveats);
  return doc;
}

ordered_json report_to_json(const AuditReport& report) {
  ordered_json doc;
  doc["title"] = kReportTitle;
  doc["config"] = config_to_json(report.config);
  doc["input"] = ordered_json{{"source_format", report.input.source_format},
                              {"ignored_fields", report.input.ignored_fields}};
  ordered_json groups = ordered_json::array();
  for (const GroupSummary& g : report.groups) {
    ordered_json row;
    row["group"] = g.group.str();
    row["favorable"] = g.favorable;
    row["unfavorable"] = g.unfavorable;
    row["total"] = g.favorable + g.unfavorable;
    row["selection_rate"] =
        g.selection_rate ? ordered_json(round_significant(*g.selection_rate)) : ordered_json(nullptr);
    groups.push_back(std::move(row));
  }
  doc["groups"] = std::move(groups);

  ordered_json evidence;
  ordered_json pairwise = ordered_json::array();
  for (const PairwiseEvidence& pair : report.evidence.pairwise) {
    ordered_json row;
    row["comparison_group"] = pair.comparison_group.str();
    row["reference_group"] = pair.reference_group.str();
    row["raw"] = assessment_to_json(pair.raw);
    row["symmetrized"] = assessment_to_json(pair.symmetrized);
    pairwise.push_back(std::move(row));
  }
  evidence["pairwise"] = std::move(pairwise);
  evidence["overall"] = assessment_to_json(report.evidence.overall);
  ordered_json tests = ordered_json::array();
  for (const TestEvidence& test : report.evidence.tests) tests.push_back(test_to_json(test));
  evidence["tests"] = std::move(tests);
  evidence["evidence_status"] = std::string(evidence_status_name(report.evidence.evidence_status));
  doc["evidence"] = std::move(evidence);

  ordered_json caveats = ordered_json::array();
  for (CaveatCode code : report.caveats) {
    caveats.push_back(ordered_json{{"code", std::string(caveat_code_name(code))},
                                   {"message", std::string(caveat_message(code))}});
  }
  doc["caveats"] = std::move(caveats);
  doc["regulatory_context"] = std::string(regulatory_context_text());
  doc["disclaimer"] = std::string(disclaimer_text());
  return doc;
}

ordered_json ranking_to_json(const std::vector<RankedAlternative>& ranking, double utility_floor,
                             double tau) {
  ordered_json doc;
  doc["title"] = "Alternative ranking";
  doc["utility_floor"] = round_significant(utility_floor);
  doc["tau"] = round_significant(tau);
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const RankedAlternative& alt = ranking[i];
    ordered_json row;
    row["rank"] = i + 1;
    row["label"] = alt.label;
    row["worst_case"] = ordered_json{
        {"kind", ratio_kind_name(alt.worst_case.kind())},
        {"value", alt.worst_case.is_finite()
                      ? ordered_json(round_significant(alt.worst_case.value()))
                      : ordered_json(nullptr)}};
    row["utility"] = round_significant(alt.utility);
    rows.push_back(std::move(row));
  }
  doc["ranking"] = std::move(rows);
  doc["disclaimer"] = std::string(disclaimer_text());
  return doc;
}

std::string render_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

namespace {

void append_assessment_lines(std::ostringstream& out, const DisparityAssessment& a) {
  out << "- variant: " << ratio_variant_name(a.variant) << "\n";
  if (a.comparison_group) out << "- comparison group: " << a.comparison_group->str() << "\n";
  if (a.reference_group) out << "- reference group: " << a.reference_group->str() << "\n";
  out << "- value: " << ratio_value_text(a.value) << "\n";
  out << "- threshold tau: " << format_number(a.threshold_tau) << "\n";
  if (a.variant == RatioVariant::symmetrized) {
    FairBand band = fair_band(a.threshold_tau);
    out << "- fair band: (" << format_number(band.lower) << ", " << format_number(band.upper)
        << ")\n";
  }
  out << "- flagged: " << yes_no(a.flagged) << "\n";
  if (!a.excluded_groups.empty()) {
    out << "- excluded groups: " << join_labels(a.excluded_groups, ", ") << "\n";
  }
  out << "- caveats: " << join_caveats(a.caveats) << "\n";
}

void append_test_lines(std::ostringstream& out, const TestEvidence& test) {
  const SignificanceResult& r = test.result;
  out << "- method: " << test_method_name(r.method)
      << (r.continuity_correction ? " (continuity corrected)" : "") << "\n";
  out << "- groups: " << join_labels(test.groups, ", ") << "\n";
  out << "- statistic: " << format_number(r.statistic) << "\n";
  out << "- dof: " << (r.dof ? std::to_string(*r.dof) : std::string("-")) << "\n";
  out << "- p-value: " << format_number(r.p_value) << "\n";
  if (r.signed_z) out << "- signed z: " << format_number(*r.signed_z) << "\n";
  out << "- caveats: " << join_caveats(r.caveats) << "\n";
}

void append_disclaimer(std::ostringstream& out) {
  out << "## Disclaimer\n\n" << disclaimer_text() << "\n";
}

}  // namespace

std::string render_report_markdown(const AuditReport& report) {
  std::ostringstream out;
  out << "# " << kReportTitle << "\n\n";
  out << "Evidence status: **"
      << evidence_status_name(report.evidence.evidence_status) << "**\n\n";

  out << "## Configuration\n\n";
  if (report.config.protected_field) {
    out << "- protected field: " << *report.config.protected_field << "\n";
  }
  if (report.config.outcome_field) {
    out << "- outcome field: " << *report.config.outcome_field << "\n";
  }
  if (report.config.polarity) {
    out << "- favorable outcome: " << report.config.polarity->favorable_value();
    if (report.config.polarity->flipped()) out << " (flipped)";
    out << "\n";
  }
  out << "- reference group: "
      << (report.config.reference_group ? report.config.reference_group->str() : "-") << "\n";
  out << "- comparison groups: "
      << (report.config.comparison_groups ? join_labels(*report.config.comparison_groups, ", ")
                                          : std::string("all others"))
      << "\n";
  out << "- tau: " << format_number(report.config.tau) << "\n";
  out << "- alpha: " << format_number(report.config.alpha) << "\n";
  out << "- tests:";
  if (report.config.tests.empty()) {
    out << " none";
  } else {
    for (std::size_t i = 0; i < report.config.tests.size(); ++i) {
      out << (i ? ", " : " ") << test_method_name(report.config.tests[i]);
    }
  }
  out << "\n";
  out << "- input: " << report.input.source_format;
  if (!report.input.ignored_fields.empty()) {
    out << " (ignored fields:";
    for (std::size_t i = 0; i < report.input.ignored_fields.size(); ++i) {
      out << (i ? ", " : " ") << report.input.ignored_fields[i];
    }
    out << ")";
  }
  out << "\n\n";

  out << "## Groups\n\n";
  out << "| group | favorable | unfavorable | total | selection rate |\n";
  out << "|---|---|---|---|---|\n";
  for (const GroupSummary& g : report.groups) {
    out << "| " << g.group.str() << " | " << g.favorable << " | " << g.unfavorable << " | "
        << (g.favorable + g.unfavorable) << " | "
        << (g.selection_rate ? format_number(*g.selection_rate) : std::string("-")) << " |\n";
  }
  out << "\n";

  out << "## Ratio metrics\n\n";
  out << "| variant | comparison | reference | value | flagged | caveats |\n";
  out << "|---|---|---|---|---|---|\n";
  auto ratio_row = [&](const DisparityAssessment& a) {
    out << "| " << ratio_variant_name(a.variant) << " | "
        << (a.comparison_group ? a.comparison_group->str() : std::string("-")) << " | "
        << (a.reference_group ? a.reference_group->str() : std::string("-")) << " | "
        << ratio_value_text(a.value) << " | " << yes_no(a.flagged) << " | "
        << join_caveats(a.caveats) << " |\n";
  };
  for (const PairwiseEvidence& pair : report.evidence.pairwise) {
    ratio_row(pair.raw);
    ratio_row(pair.symmetrized);
  }
  ratio_row(report.evidence.overall);
  out << "\n";
  FairBand band = fair_band(report.config.tau);
  out << "Threshold tau is " << format_number(report.config.tau)
      << "; the symmetrized rule leaves raw ratios inside (" << format_number(band.lower) << ", "
      << format_number(band.upper) << ") unflagged.\n";
  if (!report.evidence.overall.excluded_groups.empty()) {
    out << "Excluded from the worst case (no recorded outcomes): "
        << join_labels(report.evidence.overall.excluded_groups, ", ") << ".\n";
  }
  out << "\n";

  out << "## Significance tests\n\n";
  if (report.evidence.tests.empty()) {
    out << "No tests configured.\n";
  } else {
    out << "| method | groups | statistic | dof | p-value | z | caveats |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const TestEvidence& test : report.evidence.tests) {
      const SignificanceResult& r = test.result;
      out << "| " << test_method_name(r.method)
          << (r.continuity_correction ? " (continuity corrected)" : "") << " | "
          << join_labels(test.groups, ", ") << " | " << format_number(r.statistic) << " | "
          << (r.dof ? std::to_string(*r.dof) : std::string("-")) << " | "
          << format_number(r.p_value) << " | "
          << (r.signed_z ? format_number(*r.signed_z) : std::string("-")) << " | "
          << join_caveats(r.caveats) << " |\n";
    }
    out << "\nSignificance level alpha is " << format_number(report.config.alpha) << ".\n";
  }
  out << "\n";

  out << "## Caveats\n\n";
  for (CaveatCode code : report.caveats) {
    out << "- **" << caveat_code_name(code) << "**: " << caveat_message(code) << "\n";
  }
  out << "\n";

  out << "## Regulatory context\n\n" << regulatory_context_text() << "\n\n";
  append_disclaimer(out);
  return out.str();
}

std::string render_assessment_markdown(const DisparityAssessment& assessment) {
  std::ostringstream out;
  out << "# Ratio metric\n\n";
  append_assessment_lines(out, assessment);
  out << "\n";
  append_disclaimer(out);
  return out.str();
}

std::string render_test_markdown(const TestEvidence& test) {
  std::ostringstream out;
  out << "# Significance test\n\n";
  append_test_lines(out, test);
  out << "\n";
  append_disclaimer(out);
  return out.str();
}

std::string render_ranking_markdown(const std::vector<RankedAlternative>& ranking,
                                    double utility_floor, double tau) {
  std::ostringstream out;
  out << "# Alternative ranking\n\n";
  out << "- utility floor: " << format_number(utility_floor) << "\n";
  out << "- tau: " << format_number(tau) << "\n\n";
  out << "| rank | label | worst-case ratio | utility |\n";
  out << "|---|---|---|---|\n";
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const RankedAlternative& alt = ranking[i];
    out << "| " << (i + 1) << " | " << alt.label << " | " << ratio_value_text(alt.worst_case)
        << " | " << format_number(alt.utility) << " |\n";
  }
  out << "\n";
  append_disclaimer(out);
  return out.str();
}

}  // namespace disparity

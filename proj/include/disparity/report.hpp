#pragma once

#include <string>

#include <json.hpp>

#include "disparity/audit.hpp"

namespace disparity {

// All doubles in rendered output are rounded to at most 12 significant
// digits so that repeated runs over the same input are byte-identical.
double round_significant(double value, int digits = 12);
std::string format_number(double value, int digits = 12);

nlohmann::ordered_json config_to_json(const AuditConfig& config);
nlohmann::ordered_json assessment_to_json(const DisparityAssessment& assessment);
nlohmann::ordered_json test_to_json(const TestEvidence& test);
nlohmann::ordered_json report_to_json(const AuditReport& report);
nlohmann::ordered_json ranking_to_json(const std::vector<RankedAlternative>& ranking,
                                       double utility_floor, double tau);

// Serialized forms written to stdout by the CLI: 2-space indented JSON with
// a trailing newline, or a markdown document mirroring the same content.
std::string render_json(const nlohmann::ordered_json& doc);

std::string render_report_markdown(const AuditReport& report);
std::string render_assessment_markdown(const DisparityAssessment& assessment);
std::string render_test_markdown(const TestEvidence& test);
std::string render_ranking_markdown(const std::vector<RankedAlternative>& ranking,
                                    double utility_floor, double tau);

}  // namespace disparity

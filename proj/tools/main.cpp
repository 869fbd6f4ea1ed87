#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "disparity/audit.hpp"
#include "disparity/csv.hpp"
#include "disparity/errors.hpp"
#include "disparity/report.hpp"

namespace {

using disparity::AuditConfig;
using disparity::ConfigError;
using disparity::DataError;
using disparity::GroupLabel;
using disparity::GroupOutcomeTable;
using disparity::IngestionInfo;
using ordered_json = nlohmann::ordered_json;

struct RowFlags {
  std::string protected_field;
  std::string outcome_field;
  std::string favorable;
  std::vector<std::string> unfavorable;
};

struct LoadedTable {
  GroupOutcomeTable table;
  IngestionInfo info;
};

std::string read_text_file(const std::filesystem::path& path, const char* kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::string message = std::string("cannot read ") + kind + " file '" + path.string() + "'";
    if (std::string(kind) == "config") throw ConfigError(message);
    throw DataError(message);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LoadedTable load_with_flags(const std::string& path, const RowFlags& flags) {
  disparity::CsvTable csv = disparity::read_csv_file(path);
  if (disparity::is_aggregate_csv(csv)) {
    return LoadedTable{GroupOutcomeTable::from_aggregate(disparity::parse_aggregate_csv(csv)),
                       IngestionInfo{"aggregate", {}}};
  }
  if (flags.protected_field.empty() || flags.outcome_field.empty() || flags.favorable.empty()) {
    throw ConfigError(
        "row-level input needs --protected, --outcome and --favorable "
        "(aggregate input uses the header 'group,favorable,unfavorable')");
  }
  disparity::OutcomePolarity polarity{
      flags.favorable, flags.unfavorable.empty()
                           ? std::nullopt
                           : std::optional<std::vector<std::string>>(flags.unfavorable)};
  IngestionInfo info{"records",
                     disparity::ignored_fields(csv, flags.protected_field, flags.outcome_field)};
  return LoadedTable{GroupOutcomeTable::from_rows(disparity::csv_records(csv),
                                                  flags.protected_field, flags.outcome_field,
                                                  polarity),
                     info};
}

LoadedTable load_with_config(const std::string& path, const AuditConfig& config) {
  disparity::CsvTable csv = disparity::read_csv_file(path);
  if (disparity::is_aggregate_csv(csv)) {
    return LoadedTable{GroupOutcomeTable::from_aggregate(disparity::parse_aggregate_csv(csv)),
                       IngestionInfo{"aggregate", {}}};
  }
  if (!config.protected_field || !config.outcome_field || !config.polarity) {
    throw ConfigError(
        "row-level input needs protected_field, outcome_field and polarity in the config");
  }
  IngestionInfo info{"records",
                     disparity::ignored_fields(csv, *config.protected_field,
                                               *config.outcome_field)};
  return LoadedTable{GroupOutcomeTable::from_rows(disparity::csv_records(csv),
                                                  *config.protected_field, *config.outcome_field,
                                                  *config.polarity),
                     info};
}

void emit(const std::string& text) { std::fwrite(text.data(), 1, text.size(), stdout); }

void check_format(const std::string& format) {
  if (format != "json" && format != "markdown") {
    throw ConfigError("--format must be json or markdown");
  }
}

ordered_json with_disclaimer(const char* title, const char* key, ordered_json body) {
  ordered_json doc;
  doc["title"] = title;
  doc[key] = std::move(body);
  doc["disclaimer"] = std::string(disparity::disclaimer_text());
  return doc;
}

int cmd_metric(const std::string& data, const RowFlags& rows, const std::string& variant,
               const std::string& comparison, const std::string& reference, double tau,
               const std::string& format) {
  check_format(format);
  LoadedTable loaded = load_with_flags(data, rows);
  disparity::DisparityAssessment assessment;
  if (variant == "raw" || variant == "symmetrized") {
    if (comparison.empty() || reference.empty()) {
      throw ConfigError("variant '" + variant +
                        "' needs --comparison-group and --reference-group");
    }
    GroupLabel c{comparison};
    GroupLabel r{reference};
    assessment = variant == "raw" ? disparity::raw_ratio(loaded.table, c, r, tau)
                                  : disparity::symmetrized_ratio(loaded.table, c, r, tau);
  } else if (variant == "categorical" || variant == "categorical_worst_case") {
    assessment = disparity::categorical_worst_case(loaded.table, tau);
  } else {
    throw ConfigError("unknown variant '" + variant +
                      "' (choose raw, symmetrized or categorical)");
  }
  if (format == "json") {
    emit(disparity::render_json(
        with_disclaimer("Ratio metric", "assessment", disparity::assessment_to_json(assessment))));
  } else {
    emit(disparity::render_assessment_markdown(assessment));
  }
  return 0;
}

disparity::ReferenceDistribution parse_reference_distribution(const std::string& path) {
  std::string text = read_text_file(path, "config");
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string("reference distribution is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.empty()) {
    throw ConfigError("reference distribution must be a non-empty JSON object");
  }
  std::vector<std::pair<GroupLabel, double>> proportions;
  for (const auto& [group, p] : doc.items()) {
    if (!p.is_number()) {
      throw ConfigError("reference proportion for '" + group + "' must be a number");
    }
    proportions.emplace_back(GroupLabel{group}, p.get<double>());
  }
  return disparity::ReferenceDistribution{std::move(proportions)};
}

int cmd_test(const std::string& data, const RowFlags& rows, const std::string& method, bool yates,
             const std::string& reference_distribution, const std::string& format) {
  check_format(format);
  LoadedTable loaded = load_with_flags(data, rows);
  disparity::TestEvidence evidence;
  if (method == "chi2" || method == "pearson_chi2") {
    auto view = disparity::ContingencyView::from_table(loaded.table);
    evidence = {disparity::pearson_chi_squared(view, yates), view.groups()};
  } else if (method == "fisher" || method == "fisher_exact") {
    auto view = disparity::ContingencyView::from_table(loaded.table);
    evidence = {disparity::fisher_exact_2x2(view), view.groups()};
  } else if (method == "ztest" || method == "two_proportion_z") {
    auto view = disparity::ContingencyView::from_table(loaded.table);
    evidence = {disparity::two_proportion_z(view), view.groups()};
  } else if (method == "gof" || method == "goodness_of_fit") {
    if (reference_distribution.empty()) {
      throw ConfigError("method gof needs --reference-distribution");
    }
    disparity::ReferenceDistribution reference =
        parse_reference_distribution(reference_distribution);
    std::vector<std::pair<GroupLabel, std::uint64_t>> observed;
    for (const GroupLabel& g : loaded.table.groups()) {
      observed.emplace_back(g, loaded.table.counts(g).favorable);
    }
    evidence = {disparity::goodness_of_fit(observed, reference), loaded.table.groups()};
  } else {
    throw ConfigError("unknown method '" + method + "' (choose chi2, fisher, gof or ztest)");
  }
  if (format == "json") {
    emit(disparity::render_json(
        with_disclaimer("Significance test", "test", disparity::test_to_json(evidence))));
  } else {
    emit(disparity::render_test_markdown(evidence));
  }
  return 0;
}

int cmd_audit(const std::string& data, const std::string& config_path,
              const std::optional<double>& tau, const std::optional<double>& alpha,
              bool fail_on_flag, const std::string& format) {
  check_format(format);
  AuditConfig config = AuditConfig::from_json_text(read_text_file(config_path, "config"));
  if (tau) config.tau = *tau;
  if (alpha) config.alpha = *alpha;
  if (fail_on_flag) config.fail_on_flag = true;
  config.validate();
  LoadedTable loaded = load_with_config(data, config);
  disparity::AuditReport report = disparity::run_audit(loaded.table, config, loaded.info);
  if (format == "json") {
    emit(disparity::render_json(disparity::report_to_json(report)));
  } else {
    emit(disparity::render_report_markdown(report));
  }
  return config.fail_on_flag && report.any_flagged() ? 3 : 0;
}

double parse_utility(const std::string& text, const std::string& label) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw DataError("candidate '" + label + "': utility '" + text + "' is not a finite number");
  }
  return value;
}

int cmd_compare(const std::string& manifest_path, double utility_floor,
                const std::string& config_path, const std::optional<double>& tau,
                const std::string& format) {
  check_format(format);
  AuditConfig config;
  if (!config_path.empty()) {
    config = AuditConfig::from_json_text(read_text_file(config_path, "config"));
  }
  if (tau) config.tau = *tau;
  config.validate();

  disparity::CsvTable manifest = disparity::read_csv_file(manifest_path);
  if (manifest.header != std::vector<std::string>{"label", "data", "utility"}) {
    throw DataError("manifest header must be 'label,data,utility'");
  }
  std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
  std::vector<disparity::CandidateOutcome> candidates;
  for (const auto& row : manifest.rows) {
    const std::string& label = row[0];
    if (label.empty()) throw DataError("manifest has a row with an empty label");
    std::filesystem::path data_path{row[1]};
    if (data_path.is_relative()) data_path = base / data_path;
    LoadedTable loaded = load_with_config(data_path.string(), config);
    candidates.push_back(disparity::CandidateOutcome{label, std::move(loaded.table),
                                                     parse_utility(row[2], label)});
  }
  std::vector<disparity::RankedAlternative> ranking =
      disparity::rank_alternatives(candidates, utility_floor, config);
  if (format == "json") {
    emit(disparity::render_json(
        disparity::ranking_to_json(ranking, utility_floor, config.tau)));
  } else {
    emit(disparity::render_ranking_markdown(ranking, utility_floor, config.tau));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group selection-rate ratio audits, significance tests and reports"};
  app.require_subcommand(1);

  std::string data;
  std::string format = "json";
  RowFlags rows;

  auto add_row_flags = [&rows](CLI::App* cmd) {
    cmd->add_option("--protected", rows.protected_field,
                    "Field holding the protected attribute (row-level input)");
    cmd->add_option("--outcome", rows.outcome_field, "Field holding the outcome (row-level input)");
    cmd->add_option("--favorable", rows.favorable, "Outcome value counted as favorable");
    cmd->add_option("--unfavorable", rows.unfavorable,
                    "Outcome values counted as unfavorable (repeatable); every other value is an "
                    "error when given");
  };
  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format: json or markdown")
        ->default_str("json");
  };

  CLI::App* metric = app.add_subcommand("metric", "Compute one selection-rate ratio");
  metric->add_option("data", data, "CSV input file")->required();
  std::string variant = "raw";
  std::string comparison_group;
  std::string reference_group;
  double metric_tau = 0.8;
  metric->add_option("--variant", variant, "raw, symmetrized or categorical")
      ->default_str("raw");
  metric->add_option("--comparison-group", comparison_group, "Comparison group label");
  metric->add_option("--reference-group", reference_group, "Reference group label");
  metric->add_option("--tau", metric_tau, "Threshold in (0,1)")->default_str("0.8");
  add_row_flags(metric);
  add_format(metric);

  CLI::App* test = app.add_subcommand("test", "Run one significance test");
  test->add_option("data", data, "CSV input file")->required();
  std::string method;
  bool yates = false;
  std::string reference_distribution;
  test->add_option("--method", method, "chi2, fisher, gof or ztest")->required();
  test->add_flag("--yates", yates, "Apply the continuity correction (chi2, two groups)");
  test->add_option("--reference-distribution", reference_distribution,
                   "JSON file mapping group labels to proportions (gof)");
  add_row_flags(test);
  add_format(test);

  CLI::App* audit = app.add_subcommand("audit", "Run a full audit and print the report");
  audit->add_option("data", data, "CSV input file")->required();
  std::string config_path;
  audit->add_option("--config", config_path, "Audit config JSON file")->required();
  double audit_tau = 0.0;
  double audit_alpha = 0.0;
  CLI::Option* tau_opt = audit->add_option("--tau", audit_tau, "Override the config threshold");
  CLI::Option* alpha_opt =
      audit->add_option("--alpha", audit_alpha, "Override the config significance level");
  bool fail_on_flag = false;
  audit->add_flag("--fail-on-flag", fail_on_flag, "Exit 3 when any ratio is flagged");
  add_format(audit);

  CLI::App* compare = app.add_subcommand("compare", "Rank candidate alternatives");
  compare->add_option("manifest", data, "CSV manifest: label,data,utility")->required();
  double utility_floor = 0.0;
  compare->add_option("--utility-floor", utility_floor, "Minimum acceptable utility")->required();
  std::string compare_config;
  compare->add_option("--config", compare_config, "Audit config JSON file (for tau)");
  double compare_tau = 0.0;
  CLI::Option* compare_tau_opt =
      compare->add_option("--tau", compare_tau, "Override the config threshold");
  add_format(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (metric->parsed()) {
      return cmd_metric(data, rows, variant, comparison_group, reference_group, metric_tau,
                        format);
    }
    if (test->parsed()) {
      return cmd_test(data, rows, method, yates, reference_distribution, format);
    }
    if (audit->parsed()) {
      return cmd_audit(data, config_path,
                       tau_opt->count() ? std::optional<double>(audit_tau) : std::nullopt,
                       alpha_opt->count() ? std::optional<double>(audit_alpha) : std::nullopt,
                       fail_on_flag, format);
    }
    if (compare->parsed()) {
      return cmd_compare(data, utility_floor, compare_config,
                         compare_tau_opt->count() ? std::optional<double>(compare_tau)
                                                  : std::nullopt,
                         format);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

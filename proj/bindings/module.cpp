#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "disparity/audit.hpp"
#include "disparity/errors.hpp"
#include "disparity/report.hpp"
#include "disparity/special_functions.hpp"

namespace py = pybind11;

namespace {

using namespace disparity;

GroupLabel label(const std::string& text) { return GroupLabel{text}; }

std::vector<std::string> label_strings(const std::vector<GroupLabel>& labels) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (const GroupLabel& l : labels) out.push_back(l.str());
  return out;
}

std::vector<std::string> caveat_strings(const std::vector<CaveatCode>& codes) {
  std::vector<std::string> out;
  out.reserve(codes.size());
  for (CaveatCode c : codes) out.push_back(std::string(caveat_code_name(c)));
  return out;
}

OutcomePolarity make_polarity(const std::string& favorable,
                              const std::optional<std::vector<std::string>>& unfavorable) {
  return OutcomePolarity{favorable, unfavorable};
}

ReferenceDistribution make_reference(const std::vector<std::pair<std::string, double>>& items) {
  std::vector<std::pair<GroupLabel, double>> entries;
  entries.reserve(items.size());
  for (const auto& [name, p] : items) entries.emplace_back(label(name), p);
  return ReferenceDistribution{std::move(entries)};
}

AuditConfig make_config(const std::optional<std::string>& reference_group, double tau,
                        double alpha, const std::vector<std::string>& tests,
                        const std::optional<std::vector<std::string>>& comparison_groups,
                        const std::optional<std::vector<std::pair<std::string, double>>>&
                            reference_distribution,
                        bool yates, bool fail_on_flag,
                        const std::optional<std::string>& protected_field,
                        const std::optional<std::string>& outcome_field,
                        const std::optional<OutcomePolarity>& polarity) {
  AuditConfig config;
  if (reference_group) config.reference_group = label(*reference_group);
  config.tau = tau;
  config.alpha = alpha;
  config.tests.clear();
  for (const std::string& name : tests) {
    auto method = parse_test_method(name);
    if (!method) throw ConfigError("unknown test method '" + name + "'");
    config.tests.push_back(*method);
  }
  if (comparison_groups) {
    std::vector<GroupLabel> groups;
    for (const std::string& name : *comparison_groups) groups.push_back(label(name));
    config.comparison_groups = std::move(groups);
  }
  if (reference_distribution) config.reference_distribution = make_reference(*reference_distribution);
  config.yates = yates;
  config.fail_on_flag = fail_on_flag;
  config.protected_field = protected_field;
  config.outcome_field = outcome_field;
  config.polarity = polarity;
  config.validate();
  return config;
}

ContingencyView make_view(const GroupOutcomeTable& table,
                          const std::optional<std::vector<std::string>>& groups) {
  if (!groups) return ContingencyView::from_table(table);
  std::vector<GroupLabel> order;
  for (const std::string& name : *groups) order.push_back(label(name));
  return ContingencyView::from_table(table, order);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Group selection-rate ratio audits and contingency-table significance tests";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  py::class_<OutcomePolarity>(m, "OutcomePolarity")
      .def(py::init(&make_polarity), py::arg("favorable"),
           py::arg("unfavorable") = std::nullopt)
      .def_property_readonly("favorable", &OutcomePolarity::favorable_value)
      .def_property_readonly("unfavorable", &OutcomePolarity::unfavorable_values)
      .def_property_readonly("flipped", &OutcomePolarity::flipped)
      .def("__eq__",
           [](const OutcomePolarity& a, const OutcomePolarity& b) { return a == b; })
      .def("__repr__", [](const OutcomePolarity& p) {
        return "OutcomePolarity(favorable='" + p.favorable_value() + "', flipped=" +
               (p.flipped() ? std::string("True") : std::string("False")) + ")";
      });

  py::class_<GroupOutcomeTable>(m, "GroupOutcomeTable")
      .def_static(
          "from_rows",
          [](const std::vector<std::map<std::string, std::string>>& rows,
             const std::string& protected_field, const std::string& outcome_field,
             const OutcomePolarity& polarity) {
            return GroupOutcomeTable::from_rows(rows, protected_field, outcome_field, polarity);
          },
          py::arg("rows"), py::arg("protected_field"), py::arg("outcome_field"),
          py::arg("polarity"))
      .def_static(
          "from_aggregate",
          [](const std::vector<std::tuple<std::string, std::int64_t, std::int64_t>>& entries) {
            std::vector<AggregateEntry> converted;
            converted.reserve(entries.size());
            for (const auto& [name, favorable, unfavorable] : entries) {
              converted.push_back(AggregateEntry{label(name), favorable, unfavorable});
            }
            return GroupOutcomeTable::from_aggregate(converted);
          },
          py::arg("entries"))
      .def_property_readonly(
          "groups", [](const GroupOutcomeTable& t) { return label_strings(t.groups()); })
      .def("counts",
           [](const GroupOutcomeTable& t, const std::string& group) {
             const GroupCounts& c = t.counts(label(group));
             return std::make_pair(c.favorable, c.unfavorable);
           })
      .def("selection_rate",
           [](const GroupOutcomeTable& t, const std::string& group) {
             return t.selection_rate(label(group));
           })
      .def("flip_polarity", &GroupOutcomeTable::flip_polarity)
      .def_property_readonly("polarity", &GroupOutcomeTable::polarity)
      .def_property_readonly("grand_total", &GroupOutcomeTable::grand_total)
      .def("__eq__",
           [](const GroupOutcomeTable& a, const GroupOutcomeTable& b) { return a == b; })
      .def("__len__", &GroupOutcomeTable::group_count)
      .def("__repr__", [](const GroupOutcomeTable& t) {
        return "GroupOutcomeTable(groups=" + std::to_string(t.group_count()) +
               ", total=" + std::to_string(t.grand_total()) + ")";
      });

  py::class_<RatioValue>(m, "RatioValue")
      .def_property_readonly("kind",
                             [](const RatioValue& v) {
                               switch (v.kind()) {
                                 case RatioKind::finite:
                                   return "finite";
                                 case RatioKind::infinite:
                                   return "infinite";
                                 default:
                                   return "undefined";
                               }
                             })
      .def_property_readonly("is_finite", &RatioValue::is_finite)
      .def_property_readonly(
          "value",
          [](const RatioValue& v) -> std::optional<double> {
            if (!v.is_finite()) return std::nullopt;
            return v.value();
          })
      .def("__repr__", [](const RatioValue& v) {
        if (v.is_finite()) return "RatioValue(" + std::to_string(v.value()) + ")";
        return std::string(v.kind() == RatioKind::infinite ? "RatioValue(infinite)"
                                                           : "RatioValue(undefined)");
      });

  py::class_<DisparityAssessment>(m, "DisparityAssessment")
      .def_property_readonly(
          "variant",
          [](const DisparityAssessment& a) { return std::string(ratio_variant_name(a.variant)); })
      .def_readonly("value", &DisparityAssessment::value)
      .def_readonly("threshold_tau", &DisparityAssessment::threshold_tau)
      .def_readonly("flagged", &DisparityAssessment::flagged)
      .def_property_readonly("comparison_group",
                             [](const DisparityAssessment& a) -> std::optional<std::string> {
                               if (!a.comparison_group) return std::nullopt;
                               return a.comparison_group->str();
                             })
      .def_property_readonly("reference_group",
                             [](const DisparityAssessment& a) -> std::optional<std::string> {
                               if (!a.reference_group) return std::nullopt;
                               return a.reference_group->str();
                             })
      .def_property_readonly(
          "excluded_groups",
          [](const DisparityAssessment& a) { return label_strings(a.excluded_groups); })
      .def_property_readonly(
          "caveats", [](const DisparityAssessment& a) { return caveat_strings(a.caveats); })
      .def("__repr__", [](const DisparityAssessment& a) {
        return "DisparityAssessment(variant='" + std::string(ratio_variant_name(a.variant)) +
               "', flagged=" + (a.flagged ? std::string("True") : std::string("False")) + ")";
      });

  py::class_<SignificanceResult>(m, "SignificanceResult")
      .def_property_readonly(
          "method",
          [](const SignificanceResult& r) { return std::string(test_method_name(r.method)); })
      .def_readonly("statistic", &SignificanceResult::statistic)
      .def_readonly("dof", &SignificanceResult::dof)
      .def_readonly("p_value", &SignificanceResult::p_value)
      .def_readonly("continuity_correction", &SignificanceResult::continuity_correction)
      .def_readonly("signed_z", &SignificanceResult::signed_z)
      .def_property_readonly(
          "caveats", [](const SignificanceResult& r) { return caveat_strings(r.caveats); })
      .def("__repr__", [](const SignificanceResult& r) {
        return "SignificanceResult(method='" + std::string(test_method_name(r.method)) +
               "', p_value=" + std::to_string(r.p_value) + ")";
      });

  py::class_<AuditConfig>(m, "AuditConfig")
      .def(py::init(&make_config), py::arg("reference_group") = std::nullopt,
           py::arg("tau") = 0.8, py::arg("alpha") = 0.05,
           py::arg("tests") = std::vector<std::string>{"pearson_chi2", "fisher_exact"},
           py::arg("comparison_groups") = std::nullopt,
           py::arg("reference_distribution") = std::nullopt, py::arg("yates") = false,
           py::arg("fail_on_flag") = false, py::arg("protected_field") = std::nullopt,
           py::arg("outcome_field") = std::nullopt, py::arg("polarity") = std::nullopt)
      .def_static("from_json", &AuditConfig::from_json_text, py::arg("text"))
      .def_property_readonly("reference_group",
                             [](const AuditConfig& c) -> std::optional<std::string> {
                               if (!c.reference_group) return std::nullopt;
                               return c.reference_group->str();
                             })
      .def_readonly("tau", &AuditConfig::tau)
      .def_readonly("alpha", &AuditConfig::alpha)
      .def_property_readonly("tests",
                             [](const AuditConfig& c) {
                               std::vector<std::string> out;
                               for (TestMethod t : c.tests) {
                                 out.push_back(std::string(test_method_name(t)));
                               }
                               return out;
                             })
      .def_readonly("yates", &AuditConfig::yates)
      .def_readonly("fail_on_flag", &AuditConfig::fail_on_flag)
      .def("to_json", [](const AuditConfig& c) { return render_json(config_to_json(c)); });

  py::class_<AuditReport>(m, "AuditReport")
      .def_property_readonly("evidence_status",
                             [](const AuditReport& r) {
                               return std::string(
                                   evidence_status_name(r.evidence.evidence_status));
                             })
      .def_property_readonly("caveats",
                             [](const AuditReport& r) { return caveat_strings(r.caveats); })
      .def_property_readonly("pairwise",
                             [](const AuditReport& r) {
                               std::vector<std::tuple<std::string, DisparityAssessment,
                                                      DisparityAssessment>>
                                   out;
                               for (const PairwiseEvidence& p : r.evidence.pairwise) {
                                 out.emplace_back(p.comparison_group.str(), p.raw, p.symmetrized);
                               }
                               return out;
                             })
      .def_property_readonly("overall",
                             [](const AuditReport& r) { return r.evidence.overall; })
      .def_property_readonly("tests",
                             [](const AuditReport& r) {
                               std::vector<std::pair<SignificanceResult,
                                                     std::vector<std::string>>>
                                   out;
                               for (const TestEvidence& t : r.evidence.tests) {
                                 out.emplace_back(t.result, label_strings(t.groups));
                               }
                               return out;
                             })
      .def("any_flagged", &AuditReport::any_flagged)
      .def("any_significant", &AuditReport::any_significant)
      .def("to_json", [](const AuditReport& r) { return render_json(report_to_json(r)); })
      .def("to_markdown", [](const AuditReport& r) { return render_report_markdown(r); });

  py::class_<RankedAlternative>(m, "RankedAlternative")
      .def_readonly("label", &RankedAlternative::label)
      .def_readonly("worst_case", &RankedAlternative::worst_case)
      .def_readonly("utility", &RankedAlternative::utility)
      .def("__repr__", [](const RankedAlternative& r) {
        return "RankedAlternative(label='" + r.label + "')";
      });

  m.def(
      "raw_ratio",
      [](const GroupOutcomeTable& table, const std::string& comparison,
         const std::string& reference, double tau) {
        return raw_ratio(table, label(comparison), label(reference), tau);
      },
      py::arg("table"), py::arg("comparison"), py::arg("reference"), py::arg("tau") = 0.8);
  m.def(
      "symmetrized_ratio",
      [](const GroupOutcomeTable& table, const std::string& a, const std::string& b, double tau) {
        return symmetrized_ratio(table, label(a), label(b), tau);
      },
      py::arg("table"), py::arg("a"), py::arg("b"), py::arg("tau") = 0.8);
  m.def(
      "categorical_worst_case",
      [](const GroupOutcomeTable& table, double tau) {
        return categorical_worst_case(table, tau);
      },
      py::arg("table"), py::arg("tau") = 0.8);
  m.def(
      "fair_band",
      [](double tau) {
        FairBand band = fair_band(tau);
        return std::make_pair(band.lower, band.upper);
      },
      py::arg("tau") = 0.8);

  m.def(
      "pearson_chi_squared",
      [](const GroupOutcomeTable& table, bool yates,
         const std::optional<std::vector<std::string>>& groups) {
        return pearson_chi_squared(make_view(table, groups), yates);
      },
      py::arg("table"), py::arg("yates") = false, py::arg("groups") = std::nullopt);
  m.def(
      "fisher_exact_2x2",
      [](const GroupOutcomeTable& table, const std::optional<std::vector<std::string>>& groups) {
        return fisher_exact_2x2(make_view(table, groups));
      },
      py::arg("table"), py::arg("groups") = std::nullopt);
  m.def(
      "two_proportion_z",
      [](const GroupOutcomeTable& table, const std::optional<std::vector<std::string>>& groups) {
        return two_proportion_z(make_view(table, groups));
      },
      py::arg("table"), py::arg("groups") = std::nullopt);
  m.def(
      "goodness_of_fit",
      [](const std::vector<std::pair<std::string, std::uint64_t>>& observed,
         const std::vector<std::pair<std::string, double>>& reference) {
        std::vector<std::pair<GroupLabel, std::uint64_t>> converted;
        converted.reserve(observed.size());
        for (const auto& [name, count] : observed) converted.emplace_back(label(name), count);
        return goodness_of_fit(converted, make_reference(reference));
      },
      py::arg("observed"), py::arg("reference"));

  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def("regularized_upper_gamma", &regularized_upper_gamma, py::arg("s"), py::arg("x"));

  m.def(
      "classify_evidence",
      [](bool flagged_any, bool significant_any) {
        return std::string(evidence_status_name(classify_evidence(flagged_any, significant_any)));
      },
      py::arg("flagged_any"), py::arg("significant_any"));
  m.def("run_audit",
        [](const GroupOutcomeTable& table, const AuditConfig& config) {
          return run_audit(table, config);
        },
        py::arg("table"), py::arg("config"));
  m.def(
      "rank_alternatives",
      [](const std::vector<std::tuple<std::string, GroupOutcomeTable, double>>& candidates,
         double utility_floor, const AuditConfig& config) {
        std::vector<CandidateOutcome> converted;
        converted.reserve(candidates.size());
        for (const auto& [name, table, utility] : candidates) {
          converted.push_back(CandidateOutcome{name, table, utility});
        }
        return rank_alternatives(converted, utility_floor, config);
      },
      py::arg("candidates"), py::arg("utility_floor"), py::arg("config"));

  m.attr("__version__") = "0.1.0";
}

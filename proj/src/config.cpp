#include <cmath>

#include <json.hpp>

#include "disparity/audit.hpp"
#include "disparity/errors.hpp"

namespace disparity {

namespace {

using ordered_json = nlohmann::ordered_json;

double fraction_or_throw(const ordered_json& value, const char* key) {
  if (!value.is_number()) {
    throw ConfigError(std::string("config key '") + key + "' must be a number");
  }
  double v = value.get<double>();
  if (!(v > 0.0) || !(v < 1.0)) {
    throw ConfigError(std::string("config key '") + key +
                      "' must be strictly between 0 and 1");
  }
  return v;
}

std::string string_or_throw(const ordered_json& value, const char* key) {
  if (!value.is_string() || value.get<std::string>().empty()) {
    throw ConfigError(std::string("config key '") + key + "' must be a non-empty string");
  }
  return value.get<std::string>();
}

bool bool_or_throw(const ordered_json& value, const char* key) {
  if (!value.is_boolean()) {
    throw ConfigError(std::string("config key '") + key + "' must be a boolean");
  }
  return value.get<bool>();
}

GroupLabel label_or_throw(const ordered_json& value, const char* key) {
  std::string text = string_or_throw(value, key);
  try {
    return GroupLabel{text};
  } catch (const DataError&) {
    throw ConfigError(std::string("config key '") + key + "' must name a group");
  }
}

OutcomePolarity polarity_or_throw(const ordered_json& value) {
  if (!value.is_object()) throw ConfigError("config key 'polarity' must be an object");
  std::optional<std::string> favorable;
  std::optional<std::vector<std::string>> unfavorable;
  for (const auto& [key, sub] : value.items()) {
    if (key == "favorable") {
      favorable = string_or_throw(sub, "polarity.favorable");
    } else if (key == "unfavorable") {
      if (!sub.is_array() || sub.empty()) {
        throw ConfigError("config key 'polarity.unfavorable' must be a non-empty array");
      }
      std::vector<std::string> values;
      for (const auto& item : sub) {
        values.push_back(string_or_throw(item, "polarity.unfavorable"));
      }
      unfavorable = std::move(values);
    } else {
      throw ConfigError("unknown config key 'polarity." + key + "'");
    }
  }
  if (!favorable) throw ConfigError("config key 'polarity' needs 'favorable'");
  return OutcomePolarity{*favorable, std::move(unfavorable)};
}

}  // namespace

AuditConfig AuditConfig::from_json_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  AuditConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "protected_field") {
      config.protected_field = string_or_throw(value, "protected_field");
    } else if (key == "outcome_field") {
      config.outcome_field = string_or_throw(value, "outcome_field");
    } else if (key == "polarity") {
      config.polarity = polarity_or_throw(value);
    } else if (key == "reference_group") {
      config.reference_group = label_or_throw(value, "reference_group");
    } else if (key == "comparison_groups") {
      if (value.is_string()) {
        if (value.get<std::string>() != "all_others") {
          throw ConfigError("config key 'comparison_groups' must be an array or \"all_others\"");
        }
        config.comparison_groups = std::nullopt;
      } else if (value.is_array()) {
        if (value.empty()) {
          throw ConfigError("config key 'comparison_groups' must not be an empty array");
        }
        std::vector<GroupLabel> groups;
        for (const auto& item : value) {
          GroupLabel label = label_or_throw(item, "comparison_groups");
          for (const GroupLabel& seen : groups) {
            if (seen == label) {
              throw ConfigError("duplicate comparison group '" + label.str() + "'");
            }
          }
          groups.push_back(std::move(label));
        }
        config.comparison_groups = std::move(groups);
      } else {
        throw ConfigError("config key 'comparison_groups' must be an array or \"all_others\"");
      }
    } else if (key == "reference_distribution") {
      if (!value.is_object() || value.empty()) {
        throw ConfigError("config key 'reference_distribution' must be a non-empty object");
      }
      std::vector<std::pair<GroupLabel, double>> proportions;
      for (const auto& [group, p] : value.items()) {
        if (!p.is_number()) {
          throw ConfigError("reference proportion for '" + group + "' must be a number");
        }
        try {
          proportions.emplace_back(GroupLabel{group}, p.get<double>());
        } catch (const DataError&) {
          throw ConfigError("reference distribution group label is empty");
        }
      }
      config.reference_distribution = ReferenceDistribution{std::move(proportions)};
    } else if (key == "tau") {
      config.tau = fraction_or_throw(value, "tau");
    } else if (key == "alpha") {
      config.alpha = fraction_or_throw(value, "alpha");
    } else if (key == "tests") {
      if (!value.is_array()) throw ConfigError("config key 'tests' must be an array");
      std::vector<TestMethod> tests;
      for (const auto& item : value) {
        std::string name = string_or_throw(item, "tests");
        auto method = parse_test_method(name);
        if (!method) throw ConfigError("unknown test method '" + name + "'");
        for (TestMethod seen : tests) {
          if (seen == *method) throw ConfigError("duplicate test method '" + name + "'");
        }
        tests.push_back(*method);
      }
      config.tests = std::move(tests);
    } else if (key == "yates") {
      config.yates = bool_or_throw(value, "yates");
    } else if (key == "fail_on_flag") {
      config.fail_on_flag = bool_or_throw(value, "fail_on_flag");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

void AuditConfig::validate() const {
  if (!std::isfinite(tau) || tau <= 0.0 || tau >= 1.0) {
    throw ConfigError("tau must be a fraction strictly between 0 and 1");
  }
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    throw ConfigError("alpha must be a fraction strictly between 0 and 1");
  }
}

}  // namespace disparity

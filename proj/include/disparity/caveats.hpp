#pragma once

#include <string_view>
#include <vector>

namespace disparity {

// Machine-readable caveat codes attached to assessments, test results and
// audit reports. Codes are ordered by severity of interpretation risk; the
// enum order is the canonical rendering order.
enum class CaveatCode {
  not_a_legal_finding,
  small_numbers,
  smaller_differences_significant,
  degenerate_rates,
  excluded_empty_groups,
  low_expected_cell,
};

// Stable identifier used in JSON output, e.g. "NOT_A_LEGAL_FINDING".
std::string_view caveat_code_name(CaveatCode code);

// Human-readable explanation rendered next to the code.
std::string_view caveat_message(CaveatCode code);

// Inserts `code` into `codes` keeping canonical order and uniqueness.
void add_caveat(std::vector<CaveatCode>& codes, CaveatCode code);

// Union of two caveat lists, canonical order, no duplicates.
std::vector<CaveatCode> merge_caveats(const std::vector<CaveatCode>& a,
                                      const std::vector<CaveatCode>& b);

}  // namespace disparity

#include "disparity/caveats.hpp"

#include <algorithm>

#include "disparity/errors.hpp"

namespace disparity {

std::string_view caveat_code_name(CaveatCode code) {
  switch (code) {
    case CaveatCode::not_a_legal_finding:
      return "NOT_A_LEGAL_FINDING";
    case CaveatCode::small_numbers:
      return "SMALL_NUMBERS";
    case CaveatCode::smaller_differences_significant:
      return "SMALLER_DIFFERENCES_SIGNIFICANT";
    case CaveatCode::degenerate_rates:
      return "DEGENERATE_RATES";
    case CaveatCode::excluded_empty_groups:
      return "EXCLUDED_EMPTY_GROUPS";
    case CaveatCode::low_expected_cell:
      return "LOW_EXPECTED_CELL";
  }
  throw Error("unknown caveat code");
}

std::string_view caveat_message(CaveatCode code) {
  switch (code) {
    case CaveatCode::not_a_legal_finding:
      return "Statistical output only; nothing in this report is a finding "
             "under any law or regulation.";
    case CaveatCode::small_numbers:
      return "A ratio crossed the threshold but no configured significance "
             "test rejected independence; threshold crossings driven by "
             "small samples are weak evidence on their own.";
    case CaveatCode::smaller_differences_significant:
      return "No ratio crossed the threshold, yet a configured significance "
             "test rejected independence; smaller rate differences can still "
             "matter when they are statistically significant.";
    case CaveatCode::degenerate_rates:
      return "A selection rate of zero made a ratio zero, infinite or "
             "undefined; interpret threshold comparisons with caution.";
    case CaveatCode::excluded_empty_groups:
      return "Groups with no recorded outcomes were excluded from the "
             "worst-case ratio.";
    case CaveatCode::low_expected_cell:
      return "An expected cell count is below 5; the chi-squared "
             "approximation may be unreliable at this sample size.";
  }
  throw Error("unknown caveat code");
}

void add_caveat(std::vector<CaveatCode>& codes, CaveatCode code) {
  auto it = std::lower_bound(codes.begin(), codes.end(), code);
  if (it == codes.end() || *it != code) codes.insert(it, code);
}

std::vector<CaveatCode> merge_caveats(const std::vector<CaveatCode>& a,
                                      const std::vector<CaveatCode>& b) {
  std::vector<CaveatCode> out = a;
  for (CaveatCode c : b) add_caveat(out, c);
  return out;
}

}  // namespace disparity

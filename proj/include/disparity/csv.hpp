#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "disparity/group_table.hpp"

namespace disparity {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180 style parser: quoted fields, "" escapes, embedded separators and
// newlines, CRLF or LF line endings, optional UTF-8 BOM. Every row must have
// as many fields as the header. Throws DataError on malformed input.
CsvTable parse_csv(std::string_view text);

// Reads and parses a CSV file. Throws DataError when the file cannot be read.
CsvTable read_csv_file(const std::filesystem::path& path);

// True when the table uses the aggregated-counts header
// `group,favorable,unfavorable` (exact names, exact order).
bool is_aggregate_csv(const CsvTable& table);

// Parses an aggregated-counts table into entries. Counts must be decimal
// integers; negative counts are rejected here with a clear message.
std::vector<AggregateEntry> parse_aggregate_csv(const CsvTable& table);

// Converts a record-level table to field-name -> value records.
std::vector<Record> csv_records(const CsvTable& table);

// Header fields other than the two named ones, in header order.
std::vector<std::string> ignored_fields(const CsvTable& table,
                                        const std::string& protected_field,
                                        const std::string& outcome_field);

}  // namespace disparity

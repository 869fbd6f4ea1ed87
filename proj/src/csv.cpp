#include "disparity/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "disparity/errors.hpp"

namespace disparity {

namespace {

std::string_view strip_bom(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  return text;
}

std::vector<std::vector<std::string>> parse_raw(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_was_quoted = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
        } else {
          quoted = false;
          ++i;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
        ++i;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw DataError("line " + std::to_string(line) + ": unexpected quote inside a field");
        }
        quoted = true;
        field_was_quoted = true;
        ++i;
        break;
      case ',':
        end_field();
        ++i;
        break;
      case '\r':
        if (i + 1 < n && text[i + 1] == '\n') {
          end_row();
          i += 2;
          ++line;
        } else {
          throw DataError("line " + std::to_string(line) + ": bare carriage return");
        }
        break;
      case '\n':
        end_row();
        ++i;
        ++line;
        break;
      default:
        if (field_was_quoted) {
          throw DataError("line " + std::to_string(line) + ": text after a closing quote");
        }
        field.push_back(c);
        ++i;
        break;
    }
  }
  if (quoted) throw DataError("unterminated quoted field");
  if (!field.empty() || field_was_quoted || !row.empty()) end_row();
  return rows;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  auto rows = parse_raw(strip_bom(text));
  if (rows.empty()) throw DataError("empty CSV input");
  CsvTable table;
  table.header = std::move(rows.front());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != table.header.size()) {
      throw DataError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                      " fields, expected " + std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(rows[r]));
  }
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

bool is_aggregate_csv(const CsvTable& table) {
  return table.header.size() == 3 && table.header[0] == "group" &&
         table.header[1] == "favorable" && table.header[2] == "unfavorable";
}

namespace {

std::int64_t parse_count(const std::string& text, const std::string& group,
                         const char* column) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DataError("group '" + group + "': " + column + " count '" + text +
                    "' is not a decimal integer");
  }
  if (value < 0) {
    throw DataError("group '" + group + "': negative " + std::string(column) + " count");
  }
  return value;
}

}  // namespace

std::vector<AggregateEntry> parse_aggregate_csv(const CsvTable& table) {
  if (!is_aggregate_csv(table)) {
    throw DataError("expected header 'group,favorable,unfavorable'");
  }
  std::vector<AggregateEntry> entries;
  entries.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    GroupLabel label{row[0]};
    entries.push_back(AggregateEntry{label, parse_count(row[1], label.str(), "favorable"),
                                     parse_count(row[2], label.str(), "unfavorable")});
  }
  return entries;
}

std::vector<Record> csv_records(const CsvTable& table) {
  std::vector<Record> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    Record rec;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      rec[table.header[i]] = row[i];
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<std::string> ignored_fields(const CsvTable& table,
                                        const std::string& protected_field,
                                        const std::string& outcome_field) {
  std::vector<std::string> out;
  for (const std::string& h : table.header) {
    if (h != protected_field && h != outcome_field) out.push_back(h);
  }
  return out;
}

}  // namespace disparity

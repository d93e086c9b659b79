#include "nphawkes/csv.hpp"

#include "nphawkes/errors.hpp"

namespace nphawkes {

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ConfigError("column '" + std::string(name) + "' not found in header");
}

namespace {

// Parses one record starting at pos; advances pos past the line terminator.
std::vector<std::string> parse_record(std::string_view text, std::size_t& pos,
                                      std::size_t row_number) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  while (true) {
    if (pos >= text.size()) {
      if (quoted) {
        throw ParseError("row " + std::to_string(row_number) +
                         ": unterminated quoted field");
      }
      fields.push_back(std::move(field));
      return fields;
    }
    char c = text[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.push_back('"');
          pos += 2;
        } else {
          quoted = false;
          ++pos;
        }
      } else {
        field.push_back(c);
        ++pos;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw ParseError("row " + std::to_string(row_number) +
                           ": quote inside unquoted field");
        }
        quoted = true;
        ++pos;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        ++pos;
        break;
      case '\r':
        if (pos + 1 < text.size() && text[pos + 1] == '\n') {
          pos += 2;
        } else {
          ++pos;
        }
        fields.push_back(std::move(field));
        return fields;
      case '\n':
        ++pos;
        fields.push_back(std::move(field));
        return fields;
      default:
        field.push_back(c);
        ++pos;
    }
  }
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  CsvTable table;
  std::size_t pos = 0;
  if (text.empty()) throw ParseError("empty input: header row required");

  std::size_t row_number = 1;
  table.header = parse_record(text, pos, row_number);

  while (pos < text.size()) {
    ++row_number;
    auto fields = parse_record(text, pos, row_number);
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != table.header.size()) {
      throw ParseError("row " + std::to_string(row_number) + ": expected " +
                       std::to_string(table.header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

std::string csv_field(std::string_view value) {
  bool needs_quote = value.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quote) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace nphawkes

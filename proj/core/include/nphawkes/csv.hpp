#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nphawkes {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // each row has header.size() fields

  // Index of a header column; throws ConfigError naming the column if absent.
  std::size_t column(std::string_view name) const;
};

// RFC-4180 reader: comma separator, double-quote quoting with "" escapes,
// LF or CRLF line ends, quoted fields may contain newlines. A UTF-8 BOM is
// stripped. Every data row must have as many fields as the header; violations
// raise ParseError with the 1-based row number.
CsvTable parse_csv(std::string_view text);

// Quotes a field only when RFC-4180 requires it.
std::string csv_field(std::string_view value);

}  // namespace nphawkes

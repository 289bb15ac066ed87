#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace litterscope {

struct CsvRow {
  std::size_t line = 0;  // 1-based line where the row starts
  std::vector<std::string> cells;
};

/// RFC 4180 reader: quoted cells, doubled quotes, CRLF or LF endings.
/// Blank lines are skipped. Throws ParseError on an unterminated quote.
std::vector<CsvRow> parse_csv(std::string_view text);

/// Quotes a cell when it contains a delimiter, quote or newline.
std::string csv_escape(std::string_view cell);

std::string csv_join(const std::vector<std::string>& cells);

}  // namespace litterscope

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace litterscope {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// Fixed-point text with trailing zeros trimmed ("1.50" -> "1.5", "2.00" -> "2").
std::string format_fixed(double value, int decimals);

double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

std::string_view trim(std::string_view text);
std::string to_lower(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace litterscope

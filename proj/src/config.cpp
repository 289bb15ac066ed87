#include "litterscope/config.hpp"

#include <cmath>
#include <sstream>

#include "litterscope/error.hpp"
#include "litterscope/text.hpp"

namespace litterscope {

void SurveyConfig::validate() const {
  if (!(gsd > 0.0) || !std::isfinite(gsd)) throw Error("gsd must be > 0");
  if (tile_size < 1) throw Error("tile_size must be >= 1");
  if (!(bin_min > 0.0)) throw Error("bin_min must be > 0");
  if (!(bin_min < macro_meso_threshold && macro_meso_threshold < bin_max)) {
    throw Error("require bin_min < macro_meso_threshold < bin_max");
  }
  if (bin_count < 2) throw Error("bin_count must be >= 2");
  if (sector_count < 1) throw Error("sector_count must be >= 1");
}

SurveyConfig parse_survey_config(std::string_view text, SurveyConfig base) {
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key = value", line_no);
    }
    const std::string key = to_lower(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      if (key == "gsd") {
        base.gsd = parse_double(value);
      } else if (key == "tile_size") {
        base.tile_size = parse_integer(value);
      } else if (key == "bin_min") {
        base.bin_min = parse_double(value);
      } else if (key == "bin_max") {
        base.bin_max = parse_double(value);
      } else if (key == "bin_count") {
        base.bin_count = static_cast<int>(parse_integer(value));
      } else if (key == "macro_meso_threshold") {
        base.macro_meso_threshold = parse_double(value);
      } else if (key == "sector_count") {
        base.sector_count = static_cast<int>(parse_integer(value));
      } else {
        throw ParseError("unknown key '" + key + "'", line_no);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return base;
}

std::string to_key_value(const SurveyConfig& c) {
  std::ostringstream out;
  out << "gsd = " << format_number(c.gsd) << '\n'
      << "tile_size = " << c.tile_size << '\n'
      << "bin_min = " << format_number(c.bin_min) << '\n'
      << "bin_max = " << format_number(c.bin_max) << '\n'
      << "bin_count = " << c.bin_count << '\n'
      << "macro_meso_threshold = " << format_number(c.macro_meso_threshold) << '\n'
      << "sector_count = " << c.sector_count << '\n';
  return out.str();
}

}  // namespace litterscope

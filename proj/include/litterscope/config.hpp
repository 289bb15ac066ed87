#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace litterscope {

/// Survey-wide parameters. Areas are in m^2, gsd in m/px.
struct SurveyConfig {
  double gsd = 0.0017;
  std::int64_t tile_size = 512;
  double bin_min = 1e-4;
  double bin_max = 1e1;
  int bin_count = 14;
  double macro_meso_threshold = 6.25e-4;
  int sector_count = 10;

  /// Throws Error naming the first violated constraint.
  void validate() const;

  bool operator==(const SurveyConfig&) const = default;
};

/// Reads a flat `key = value` document on top of `base`. Lines starting
/// with '#' and blank lines are ignored; unknown keys are errors.
SurveyConfig parse_survey_config(std::string_view text, SurveyConfig base = {});

std::string to_key_value(const SurveyConfig& config);

}  // namespace litterscope

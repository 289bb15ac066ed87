#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "litterscope/config.hpp"
#include "litterscope/ingest.hpp"

namespace litterscope {

/// One accepted instance with its derived physical quantities.
struct SurveyInstance {
  std::int64_t id = 0;
  GCode gcode{"G0"};
  std::optional<Zone> zone;
  std::int64_t pixels = 0;
  double area_m2 = 0.0;
  double x_m = 0.0;  // projected centroid
  double y_m = 0.0;
};

struct Survey {
  std::vector<SurveyInstance> instances;  // ascending id
  std::vector<Rejection> rejections;
};

/// validate -> rasterize -> area -> centroid. Records whose polygon covers no
/// pixel center are rejected ("empty rasterization"). `threads` > 1 splits
/// the per-instance geometry across workers; the result does not depend on it.
/// Records must already be in global coordinates.
Survey build_survey(std::span<const InstanceRecord> records,
                    const Taxonomy& taxonomy, double gsd, int threads = 1);

/// Instance areas in the survey order, optionally restricted to one zone.
std::vector<double> survey_areas(std::span<const SurveyInstance> instances,
                                 std::optional<Zone> zone = std::nullopt);

}  // namespace litterscope

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "litterscope/evalmetrics.hpp"
#include "litterscope/fragmentation.hpp"
#include "litterscope/risk.hpp"
#include "litterscope/sourcesink.hpp"
#include "litterscope/survey.hpp"

namespace litterscope {

// CSV/JSON renderings of module results. Column orders are part of the
// file formats and must not change.

std::string areas_csv(std::span<const SurveyInstance> instances,
                      const Taxonomy& taxonomy);

/// Reads an areas.csv back into instances (pixels, area, centroid, zone).
std::vector<SurveyInstance> parse_areas_csv(std::string_view text);

nlohmann::json fit_json(const PowerLawFit& fit, std::string_view zone);
nlohmann::json bins_json(const Binning& binning);

std::string sectors_csv(std::span<const SectorMetrics> sectors);
nlohmann::json centroid_json(const CentroidShift& shift);

std::string groups_csv(std::span<const GroupComposition> groups);

nlohmann::json eval_json(const EvalReport& report);

/// Two-space indented JSON with a trailing newline.
std::string dump_json(const nlohmann::json& value);

}  // namespace litterscope

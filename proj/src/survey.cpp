#include "litterscope/survey.hpp"

#include <algorithm>
#include <optional>

#include "litterscope/error.hpp"
#include "litterscope/geometry.hpp"
#include "litterscope/parallel.hpp"

namespace litterscope {

Survey build_survey(std::span<const InstanceRecord> records, const Taxonomy& taxonomy,
                    double gsd, int threads) {
  if (!(gsd > 0.0)) throw Error("gsd must be > 0");
  auto validated = validate_instances(records, taxonomy);
  for (const auto& r : validated.accepted) {
    if (r.tile) throw Error("record " + std::to_string(r.id) + " is still tile-local");
  }

  std::vector<std::optional<SurveyInstance>> slots(validated.accepted.size());
  parallel_for(slots.size(), threads, [&](std::size_t i) {
    const auto& r = validated.accepted[i];
    const auto spans = rasterize_spans(r.polygon);
    if (spans.empty()) return;
    PixelFootprint fp;
    fp.instance_id = r.id;
    for (const auto& s : spans) fp.pixel_count += s.x_end - s.x_begin;
    const auto area = physical_area(fp, gsd);
    const auto centroid = instance_centroid(r.polygon, gsd, r.id);
    slots[i] = SurveyInstance{r.id, r.gcode, r.zone, fp.pixel_count, area.area_m2,
                              centroid.x_m, centroid.y_m};
  });

  Survey survey;
  survey.rejections = std::move(validated.rejections);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) {
      survey.instances.push_back(std::move(*slots[i]));
    } else {
      survey.rejections.push_back({validated.accepted[i].id, "empty rasterization"});
    }
  }
  std::sort(survey.instances.begin(), survey.instances.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return survey;
}

std::vector<double> survey_areas(std::span<const SurveyInstance> instances,
                                 std::optional<Zone> zone) {
  std::vector<double> areas;
  areas.reserve(instances.size());
  for (const auto& inst : instances) {
    if (zone && inst.zone != zone) continue;
    areas.push_back(inst.area_m2);
  }
  return areas;
}

}  // namespace litterscope

#include "litterscope/sourcesink.hpp"

#include <algorithm>
#include <vector>

#include "litterscope/error.hpp"

namespace litterscope {

std::array<GroupComposition, 3> compose(std::span<const SurveyInstance> instances,
                                        const Taxonomy& taxonomy) {
  if (instances.empty()) throw Error("source composition of an empty survey");
  std::array<GroupComposition, 3> groups;
  for (std::size_t g = 0; g < groups.size(); ++g) groups[g].group = kSourceGroups[g];

  // Summed in id order so the result does not depend on input order.
  std::vector<const SurveyInstance*> ordered;
  ordered.reserve(instances.size());
  for (const auto& inst : instances) ordered.push_back(&inst);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->id < b->id; });

  double total_area = 0.0;
  for (const auto* inst : ordered) {
    auto& g = groups[static_cast<std::size_t>(taxonomy.at(inst->gcode).group)];
    ++g.count;
    g.total_area_m2 += inst->area_m2;
    total_area += inst->area_m2;
  }
  const auto total_count = static_cast<double>(instances.size());
  for (auto& g : groups) {
    g.count_share = static_cast<double>(g.count) / total_count;
    g.area_share = total_area > 0.0 ? g.total_area_m2 / total_area : 0.0;
    g.mean_item_area_m2 = g.count > 0 ? g.total_area_m2 / static_cast<double>(g.count) : 0.0;
  }
  return groups;
}

double overrepresentation(double count_share, double area_share) {
  if (!(count_share > 0.0)) throw Error("overrepresentation needs count_share > 0");
  return area_share / count_share;
}

double overrepresentation(const GroupComposition& group) {
  return overrepresentation(group.count_share, group.area_share);
}

}  // namespace litterscope

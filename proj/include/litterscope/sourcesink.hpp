#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "litterscope/ingest.hpp"
#include "litterscope/survey.hpp"

namespace litterscope {

struct GroupComposition {
  SourceGroup group = SourceGroup::Domestic;
  std::int64_t count = 0;
  double count_share = 0.0;
  double total_area_m2 = 0.0;
  double area_share = 0.0;
  double mean_item_area_m2 = 0.0;  // 0 when count == 0
};

/// Count and area shares per source group, always in the order
/// Domestic, Fishing, Fragments. Throws Error for an empty survey or an
/// unmapped code.
std::array<GroupComposition, 3> compose(std::span<const SurveyInstance> instances,
                                        const Taxonomy& taxonomy);

/// area_share / count_share. Throws Error when count_share is zero.
double overrepresentation(double count_share, double area_share);
double overrepresentation(const GroupComposition& group);

}  // namespace litterscope

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "litterscope/fragmentation.hpp"
#include "litterscope/risk.hpp"
#include "litterscope/sourcesink.hpp"

namespace litterscope {

/// log10(center) vs log10(npd) scatter with fitted lines and alpha/R^2
/// labels. Points are coloured by segment; straddling bins are grey.
std::string npd_chart_svg(std::span<const SizeBin> bins,
                          std::span<const PowerLawFit> fits, double threshold,
                          std::string_view title, std::string_view run_id);

/// Side-by-side cci_norm / eri_norm bars per sector.
std::string sector_chart_svg(std::span<const SectorMetrics> sectors,
                             std::string_view run_id);

/// Count share vs area share bars per source group.
std::string composition_chart_svg(std::span<const GroupComposition> groups,
                                  std::string_view run_id);

}  // namespace litterscope

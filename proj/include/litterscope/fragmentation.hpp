#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "litterscope/config.hpp"

namespace litterscope {

/// Geometric bin limits in m^2: edges[i] = bin_min * r^i.
struct BinEdges {
  std::vector<double> edges;

  std::size_t bin_count() const { return edges.empty() ? 0 : edges.size() - 1; }
  double ratio() const { return edges[1] / edges[0]; }
  /// Bin holding `area`, lower-inclusive except the last bin, which is closed.
  std::optional<std::size_t> locate(double area) const;
};

BinEdges build_bins(double bin_min, double bin_max, int bin_count);
BinEdges build_bins(const SurveyConfig& config);

struct SizeBin {
  double low = 0.0;
  double high = 0.0;
  double center = 0.0;  // sqrt(low * high)
  std::int64_t count = 0;
  double npd = 0.0;  // count / (high - low), items per m^2

  double width() const { return high - low; }
};

struct Binning {
  std::vector<SizeBin> bins;
  std::int64_t underflow = 0;  // areas below bin_min (or NaN)
  std::int64_t overflow = 0;   // areas above bin_max

  std::int64_t binned() const;
};

Binning bin_areas(std::span<const double> areas_m2, const BinEdges& edges);

enum class Segment { Macro, Meso };
std::string_view to_string(Segment segment);
std::optional<Segment> parse_segment(std::string_view name);

struct PowerLawFit {
  double alpha = 0.0;
  double log10_c = 0.0;
  double r_squared = 0.0;
  double p_value = 1.0;
  int bins_used = 0;
  Segment segment = Segment::Macro;
};

/// Bins taking part in a fit: Macro keeps low >= threshold, Meso keeps
/// high <= threshold, empty bins are dropped. A bin straddling the threshold
/// belongs to neither segment.
std::vector<SizeBin> segment_bins(std::span<const SizeBin> bins,
                                  Segment segment, double threshold);

/// OLS of log10(npd) on log10(center). Throws Error("insufficient bins")
/// when fewer than 3 bins survive segment_bins.
PowerLawFit fit_power_law(std::span<const SizeBin> bins, Segment segment,
                          double threshold);

}  // namespace litterscope

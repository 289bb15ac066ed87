#include "litterscope/fragmentation.hpp"

#include <algorithm>
#include <cmath>

#include "litterscope/error.hpp"
#include "litterscope/stats.hpp"

namespace litterscope {

std::optional<std::size_t> BinEdges::locate(double area) const {
  if (edges.size() < 2 || !(area >= edges.front()) || area > edges.back()) {
    return std::nullopt;
  }
  if (area == edges.back()) return edges.size() - 2;
  const auto it = std::upper_bound(edges.begin(), edges.end(), area);
  return static_cast<std::size_t>(it - edges.begin()) - 1;
}

BinEdges build_bins(double bin_min, double bin_max, int bin_count) {
  if (!(bin_min > 0.0) || !std::isfinite(bin_max) || !(bin_max > bin_min)) {
    throw Error("bin range must satisfy 0 < bin_min < bin_max");
  }
  if (bin_count < 1) throw Error("bin_count must be >= 1");
  BinEdges out;
  out.edges.resize(static_cast<std::size_t>(bin_count) + 1);
  const double log_ratio = std::log(bin_max / bin_min) / bin_count;
  out.edges.front() = bin_min;
  for (int i = 1; i < bin_count; ++i) {
    out.edges[static_cast<std::size_t>(i)] = bin_min * std::exp(log_ratio * i);
  }
  out.edges.back() = bin_max;
  return out;
}

BinEdges build_bins(const SurveyConfig& config) {
  return build_bins(config.bin_min, config.bin_max, config.bin_count);
}

std::int64_t Binning::binned() const {
  std::int64_t total = 0;
  for (const auto& b : bins) total += b.count;
  return total;
}

Binning bin_areas(std::span<const double> areas_m2, const BinEdges& edges) {
  Binning out;
  out.bins.resize(edges.bin_count());
  for (std::size_t i = 0; i < out.bins.size(); ++i) {
    auto& b = out.bins[i];
    b.low = edges.edges[i];
    b.high = edges.edges[i + 1];
    b.center = std::sqrt(b.low * b.high);
  }
  for (double a : areas_m2) {
    if (const auto bin = edges.locate(a)) {
      ++out.bins[*bin].count;
    } else if (a > edges.edges.back()) {
      ++out.overflow;
    } else {
      ++out.underflow;
    }
  }
  for (auto& b : out.bins) b.npd = static_cast<double>(b.count) / b.width();
  return out;
}

std::string_view to_string(Segment segment) {
  return segment == Segment::Macro ? "macro" : "meso";
}

std::optional<Segment> parse_segment(std::string_view name) {
  if (name == "macro" || name == "Macro") return Segment::Macro;
  if (name == "meso" || name == "Meso") return Segment::Meso;
  return std::nullopt;
}

std::vector<SizeBin> segment_bins(std::span<const SizeBin> bins, Segment segment,
                                  double threshold) {
  std::vector<SizeBin> out;
  for (const auto& b : bins) {
    if (b.count <= 0) continue;
    const bool keep = segment == Segment::Macro ? b.low >= threshold : b.high <= threshold;
    if (keep) out.push_back(b);
  }
  return out;
}

PowerLawFit fit_power_law(std::span<const SizeBin> bins, Segment segment,
                          double threshold) {
  const auto used = segment_bins(bins, segment, threshold);
  if (used.size() < 3) {
    throw Error("insufficient bins for " + std::string(to_string(segment)) +
                " fit: " + std::to_string(used.size()) + " non-empty, need 3");
  }
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(used.size());
  y.reserve(used.size());
  for (const auto& b : used) {
    x.push_back(std::log10(b.center));
    y.push_back(std::log10(b.npd));
  }
  const auto ols = ordinary_least_squares(x, y);
  PowerLawFit fit;
  fit.alpha = ols.slope;
  fit.log10_c = ols.intercept;
  fit.r_squared = ols.r_squared;
  fit.p_value = ols.p_value;
  fit.bins_used = ols.n;
  fit.segment = segment;
  return fit;
}

}  // namespace litterscope

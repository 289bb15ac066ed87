#include "litterscope/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "litterscope/error.hpp"

namespace litterscope {

namespace {

std::vector<const SurveyInstance*> by_id(std::span<const SurveyInstance> instances) {
  std::vector<const SurveyInstance*> ordered;
  ordered.reserve(instances.size());
  for (const auto& inst : instances) ordered.push_back(&inst);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->id < b->id; });
  return ordered;
}

}  // namespace

double alongshore_coordinate(double x, double y, double axis_angle_deg) {
  const double turns = std::fmod(axis_angle_deg, 360.0);
  const double a = turns < 0.0 ? turns + 360.0 : turns;
  if (a == 0.0) return x;
  if (a == 90.0) return y;
  if (a == 180.0) return -x;
  if (a == 270.0) return -y;
  const double rad = a * std::numbers::pi / 180.0;
  return x * std::cos(rad) + y * std::sin(rad);
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error("quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<Sector> partition_sectors(std::span<const double> coordinates, int k) {
  if (k < 1) throw Error("sector count must be >= 1");
  if (coordinates.size() < static_cast<std::size_t>(k)) {
    throw Error("need at least " + std::to_string(k) + " instances for " +
                std::to_string(k) + " sectors, got " +
                std::to_string(coordinates.size()));
  }
  std::vector<double> sorted(coordinates.begin(), coordinates.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    throw Error("all alongshore coordinates coincide");
  }
  std::vector<double> bounds;
  bounds.reserve(static_cast<std::size_t>(k) + 1);
  bounds.push_back(sorted.front());
  for (int i = 1; i < k; ++i) {
    bounds.push_back(quantile_sorted(sorted, static_cast<double>(i) / k));
  }
  bounds.push_back(sorted.back());

  std::vector<Sector> sectors;
  sectors.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    sectors.push_back({i + 1, bounds[static_cast<std::size_t>(i)],
                       bounds[static_cast<std::size_t>(i) + 1]});
  }
  return sectors;
}

std::size_t sector_of(std::span<const Sector> sectors, double coordinate) {
  if (sectors.empty()) throw Error("no sectors");
  // First sector whose upper bound exceeds the coordinate.
  const auto it = std::upper_bound(
      sectors.begin(), sectors.end(), coordinate,
      [](double c, const Sector& s) { return c < s.upper; });
  if (it == sectors.end()) return sectors.size() - 1;
  return static_cast<std::size_t>(it - sectors.begin());
}

double compute_cci(std::int64_t count, const Sector& sector) {
  if (!(sector.length() > 0.0)) {
    throw Error("sector S" + std::to_string(sector.index) + " has zero length");
  }
  return static_cast<double>(count) / sector.length();
}

double compute_eri(std::span<const SurveyInstance> instances, const Taxonomy& taxonomy) {
  double eri = 0.0;
  for (const auto* inst : by_id(instances)) {
    eri += taxonomy.at(inst->gcode).hazard_weight * inst->area_m2;
  }
  return eri;
}

std::vector<double> minmax_normalize(std::span<const double> values) {
  if (values.size() < 2) throw Error("min-max normalization needs >= 2 values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double max = *hi;
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    out.push_back(max == min ? 0.5 : (v - min) / (max - min));
  }
  return out;
}

CentroidShift centroid_shift(std::span<const SurveyInstance> instances,
                             const Taxonomy& taxonomy) {
  if (instances.empty()) throw Error("centroid shift of an empty survey");
  double sx = 0.0;
  double sy = 0.0;
  double wx = 0.0;
  double wy = 0.0;
  double wsum = 0.0;
  for (const auto* inst : by_id(instances)) {
    const double w = inst->area_m2 * taxonomy.at(inst->gcode).hazard_weight;
    sx += inst->x_m;
    sy += inst->y_m;
    wx += w * inst->x_m;
    wy += w * inst->y_m;
    wsum += w;
  }
  if (!(wsum > 0.0)) throw Error("total area-hazard weight is zero");
  const auto n = static_cast<double>(instances.size());
  CentroidShift shift;
  shift.c_count = {sx / n, sy / n};
  shift.c_eri = {wx / wsum, wy / wsum};
  shift.delta = std::hypot(shift.c_eri.x - shift.c_count.x, shift.c_eri.y - shift.c_count.y);
  return shift;
}

RiskReport analyze_risk(std::span<const SurveyInstance> instances,
                        const Taxonomy& taxonomy, int sector_count,
                        double axis_angle_deg) {
  std::vector<double> coords;
  coords.reserve(instances.size());
  for (const auto& inst : instances) {
    coords.push_back(alongshore_coordinate(inst.x_m, inst.y_m, axis_angle_deg));
  }
  const auto sectors = partition_sectors(coords, sector_count);

  std::vector<std::vector<SurveyInstance>> members(sectors.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    members[sector_of(sectors, coords[i])].push_back(instances[i]);
  }

  RiskReport report;
  std::vector<double> cci;
  std::vector<double> eri;
  for (std::size_t j = 0; j < sectors.size(); ++j) {
    SectorMetrics m;
    m.sector = sectors[j];
    m.count = static_cast<std::int64_t>(members[j].size());
    m.cci = compute_cci(m.count, m.sector);
    m.eri = compute_eri(members[j], taxonomy);
    cci.push_back(m.cci);
    eri.push_back(m.eri);
    report.sectors.push_back(m);
  }
  if (report.sectors.size() >= 2) {
    const auto cci_norm = minmax_normalize(cci);
    const auto eri_norm = minmax_normalize(eri);
    for (std::size_t j = 0; j < report.sectors.size(); ++j) {
      report.sectors[j].cci_norm = cci_norm[j];
      report.sectors[j].eri_norm = eri_norm[j];
    }
  } else {
    // A single sector has no spread to normalize against.
    report.sectors.front().cci_norm = 0.5;
    report.sectors.front().eri_norm = 0.5;
  }
  report.shift = centroid_shift(instances, taxonomy);
  return report;
}

}  // namespace litterscope

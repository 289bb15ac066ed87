#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "litterscope/ingest.hpp"
#include "litterscope/survey.hpp"

namespace litterscope {

/// Alongshore interval [lower, upper) in meters; the last sector is closed.
struct Sector {
  int index = 1;  // 1-based, ascending alongshore coordinate
  double lower = 0.0;
  double upper = 0.0;

  double length() const { return upper - lower; }
};

struct SectorMetrics {
  Sector sector;
  std::int64_t count = 0;  // N_j
  double cci = 0.0;        // N_j / L_j, items per meter
  double eri = 0.0;        // sum_k w_k * A_jk
  double cci_norm = 0.0;
  double eri_norm = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct CentroidShift {
  Vec2 c_count;
  Vec2 c_eri;
  double delta = 0.0;
};

/// Projection of a point onto the alongshore axis, which points at
/// `axis_angle_deg` from +x. 90 degrees (the default) selects y exactly.
double alongshore_coordinate(double x, double y, double axis_angle_deg = 90.0);

/// Linear-interpolation quantile of sorted data, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

/// Equal-quantile partition into k sectors bounded by the min and max
/// coordinate. Throws Error when there are fewer than k coordinates or all
/// coordinates coincide.
std::vector<Sector> partition_sectors(std::span<const double> coordinates, int k);

/// Index into `sectors` of the sector holding `coordinate`. Values outside
/// the covered range clamp to the first/last sector.
std::size_t sector_of(std::span<const Sector> sectors, double coordinate);

/// N_j / L_j. Throws Error for a zero-length sector.
double compute_cci(std::int64_t count, const Sector& sector);

/// sum_k w_k * A_jk, accumulated in ascending instance id. Throws Error
/// naming any code missing from the taxonomy.
double compute_eri(std::span<const SurveyInstance> instances,
                   const Taxonomy& taxonomy);

/// (v - min) / (max - min); all 0.5 when max == min. Throws Error for
/// fewer than 2 values.
std::vector<double> minmax_normalize(std::span<const double> values);

/// Unweighted and area-times-hazard weighted centroids and their distance.
/// Throws Error when empty or when the total weight is zero.
CentroidShift centroid_shift(std::span<const SurveyInstance> instances,
                             const Taxonomy& taxonomy);

struct RiskReport {
  std::vector<SectorMetrics> sectors;
  CentroidShift shift;
};

RiskReport analyze_risk(std::span<const SurveyInstance> instances,
                        const Taxonomy& taxonomy, int sector_count,
                        double axis_angle_deg = 90.0);

}  // namespace litterscope

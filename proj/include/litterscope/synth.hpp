#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "litterscope/ingest.hpp"

namespace litterscope {

/// Stream identifier written to manifests. Outputs of std::mt19937_64 are
/// fixed by the C++ standard; a double in [0, 1) is (word >> 11) * 2^-53.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/u53";

class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n), by rejection. n must be > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// Inverse CDF of the power-law density p(S) ~ S^alpha on [a, b).
double powerlaw_quantile(double u, double alpha, double a, double b);

/// Analytic CDF matching powerlaw_quantile.
double powerlaw_cdf(double s, double alpha, double a, double b);

/// Throws Error when alpha == -1, a <= 0, a >= b or n < 1.
std::vector<double> sample_powerlaw(std::int64_t n, double alpha, double a,
                                    double b, std::uint64_t seed);

struct SynthConfig {
  std::int64_t n_instances = 1000;
  double alpha_true = -2.0;
  double area_min = 6.25e-4;
  double area_max = 10.0;
  double gsd = 0.0017;
  std::int64_t scene_width = 16384;
  std::int64_t scene_height = 16384;
  std::vector<std::pair<std::string, double>> category_mix{{"G76", 1.0}};
  double intertidal_fraction = 0.5;
  std::uint64_t seed = 1;
  int max_attempts = 2000;  // placement tries per instance

  /// Throws Error on invalid values; probabilities must sum to 1 within 1e-9.
  void validate() const;
};

struct SynthInstance {
  std::int64_t id = 0;
  GCode gcode{"G0"};
  Zone zone = Zone::Intertidal;
  double true_area_m2 = 0.0;
  std::int64_t origin_x = 0;
  std::int64_t origin_y = 0;
  std::int64_t side_px = 0;
};

struct SynthScene {
  SynthConfig config;
  std::vector<SynthInstance> instances;  // ascending id
  std::vector<InstanceRecord> records;   // ground truth squares
};

/// Side of the square standing in for a sampled area: round(sqrt(A)/gsd),
/// at least 2 px.
std::int64_t square_side_px(double area_m2, double gsd);

/// Samples areas and categories, then places axis-aligned squares uniformly
/// without overlap. Throws Error when a square cannot be placed within
/// `max_attempts` tries.
SynthScene generate_scene(const SynthConfig& config);

struct DetectionNoise {
  double dropout = 0.0;            // probability a ground truth is missed
  double confidence_jitter = 0.0;  // confidence = 1 - jitter * u
  std::uint64_t seed = 1;
};

/// Detections equal to the ground-truth masks, after dropout and jitter.
std::vector<InstanceRecord> simulate_detections(const SynthScene& scene,
                                                const DetectionNoise& noise);

}  // namespace litterscope

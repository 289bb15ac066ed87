#include "litterscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "litterscope/error.hpp"

namespace litterscope {

namespace {

// Uniform grid of occupied squares for overlap queries.
class OccupancyGrid {
 public:
  explicit OccupancyGrid(std::int64_t cell) : cell_(cell) {}

  bool overlaps(std::int64_t x, std::int64_t y, std::int64_t side,
                const std::vector<SynthInstance>& placed) const {
    for (std::int64_t cy = y / cell_; cy <= (y + side - 1) / cell_; ++cy) {
      for (std::int64_t cx = x / cell_; cx <= (x + side - 1) / cell_; ++cx) {
        const auto it = cells_.find(key(cx, cy));
        if (it == cells_.end()) continue;
        for (const std::size_t k : it->second) {
          const auto& o = placed[k];
          if (x < o.origin_x + o.side_px && o.origin_x < x + side &&
              y < o.origin_y + o.side_px && o.origin_y < y + side) {
            return true;
          }
        }
      }
    }
    return false;
  }

  void insert(std::size_t index, const SynthInstance& s) {
    for (std::int64_t cy = s.origin_y / cell_; cy <= (s.origin_y + s.side_px - 1) / cell_; ++cy) {
      for (std::int64_t cx = s.origin_x / cell_; cx <= (s.origin_x + s.side_px - 1) / cell_; ++cx) {
        cells_[key(cx, cy)].push_back(index);
      }
    }
  }

 private:
  static std::uint64_t key(std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ static_cast<std::uint64_t>(cy);
  }
  std::int64_t cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

}  // namespace

std::uint64_t SynthRng::below(std::uint64_t n) {
  if (n == 0) throw Error("empty range");
  // Largest multiple of n that fits, to avoid modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  while (true) {
    const std::uint64_t v = next();
    if (v < limit) return v % n;
  }
}

double powerlaw_quantile(double u, double alpha, double a, double b) {
  const double e = alpha + 1.0;
  const double lo = std::pow(a, e);
  const double hi = std::pow(b, e);
  const double s = std::pow(lo + u * (hi - lo), 1.0 / e);
  // Rounding can push the top end to b; keep samples in [a, b).
  return std::clamp(s, a, std::nextafter(b, a));
}

double powerlaw_cdf(double s, double alpha, double a, double b) {
  if (s <= a) return 0.0;
  if (s >= b) return 1.0;
  const double e = alpha + 1.0;
  return (std::pow(s, e) - std::pow(a, e)) / (std::pow(b, e) - std::pow(a, e));
}

std::vector<double> sample_powerlaw(std::int64_t n, double alpha, double a, double b,
                                    std::uint64_t seed) {
  if (alpha == -1.0) throw Error("alpha = -1 (log-uniform) is not supported");
  if (!(a > 0.0) || !(b > a)) throw Error("power-law range must satisfy 0 < a < b");
  if (n < 1) throw Error("sample size must be >= 1");
  SynthRng rng(seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    out.push_back(powerlaw_quantile(rng.uniform(), alpha, a, b));
  }
  return out;
}

void SynthConfig::validate() const {
  if (n_instances < 1) throw Error("n_instances must be >= 1");
  if (!(alpha_true < 0.0) || alpha_true == -1.0) {
    throw Error("alpha_true must be negative and != -1");
  }
  if (!(area_min > 0.0) || !(area_max > area_min)) {
    throw Error("area range must satisfy 0 < area_min < area_max");
  }
  if (!(gsd > 0.0)) throw Error("gsd must be > 0");
  if (scene_width < 2 || scene_height < 2) throw Error("scene too small");
  if (category_mix.empty()) throw Error("category_mix is empty");
  double total = 0.0;
  for (const auto& [code, p] : category_mix) {
    static_cast<void>(GCode{code});
    if (!(p >= 0.0)) throw Error("negative probability for " + code);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("category probabilities must sum to 1");
  if (!(intertidal_fraction >= 0.0 && intertidal_fraction <= 1.0)) {
    throw Error("intertidal_fraction outside [0, 1]");
  }
  if (max_attempts < 1) throw Error("max_attempts must be >= 1");
  const auto largest = square_side_px(area_max, gsd);
  if (largest > scene_width || largest > scene_height) {
    throw Error("area_max does not fit in the scene at this gsd");
  }
}

std::int64_t square_side_px(double area_m2, double gsd) {
  const auto side = static_cast<std::int64_t>(std::llround(std::sqrt(area_m2) / gsd));
  return std::max<std::int64_t>(side, 2);
}

SynthScene generate_scene(const SynthConfig& config) {
  config.validate();
  SynthScene scene;
  scene.config = config;
  SynthRng rng(config.seed);

  std::vector<GCode> codes;
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& [code, p] : config.category_mix) {
    codes.emplace_back(code);
    acc += p;
    cumulative.push_back(acc);
  }

  // Draw order per instance: area, category, zone. Placement draws follow.
  const auto n = static_cast<std::size_t>(config.n_instances);
  scene.instances.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = scene.instances[i];
    s.id = static_cast<std::int64_t>(i) + 1;
    s.true_area_m2 = powerlaw_quantile(rng.uniform(), config.alpha_true,
                                       config.area_min, config.area_max);
    const double u = rng.uniform() * acc;
    const auto pick = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    s.gcode = codes[std::min<std::size_t>(pick - cumulative.begin(), codes.size() - 1)];
    s.zone = rng.uniform() < config.intertidal_fraction ? Zone::Intertidal : Zone::Backshore;
    s.side_px = square_side_px(s.true_area_m2, config.gsd);
  }

  // Largest first: big squares are the hardest to fit.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scene.instances[a].side_px > scene.instances[b].side_px;
  });
  OccupancyGrid grid(64);
  for (const std::size_t i : order) {
    auto& s = scene.instances[i];
    const auto span_x = static_cast<std::uint64_t>(config.scene_width - s.side_px + 1);
    const auto span_y = static_cast<std::uint64_t>(config.scene_height - s.side_px + 1);
    bool placed = false;
    for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
      const auto x = static_cast<std::int64_t>(rng.below(span_x));
      const auto y = static_cast<std::int64_t>(rng.below(span_y));
      if (grid.overlaps(x, y, s.side_px, scene.instances)) continue;
      s.origin_x = x;
      s.origin_y = y;
      grid.insert(i, s);
      placed = true;
      break;
    }
    if (!placed) {
      throw Error("could not place instance " + std::to_string(s.id) + " (side " +
                  std::to_string(s.side_px) + " px) after " +
                  std::to_string(config.max_attempts) +
                  " attempts; use a larger scene");
    }
  }

  scene.records.reserve(n);
  for (const auto& s : scene.instances) {
    const auto x0 = static_cast<double>(s.origin_x);
    const auto y0 = static_cast<double>(s.origin_y);
    const auto x1 = static_cast<double>(s.origin_x + s.side_px);
    const auto y1 = static_cast<double>(s.origin_y + s.side_px);
    InstanceRecord r;
    r.id = s.id;
    r.gcode = s.gcode;
    r.polygon = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    r.zone = s.zone;
    scene.records.push_back(std::move(r));
  }
  return scene;
}

std::vector<InstanceRecord> simulate_detections(const SynthScene& scene,
                                                const DetectionNoise& noise) {
  if (!(noise.dropout >= 0.0 && noise.dropout <= 1.0)) throw Error("dropout outside [0, 1]");
  if (!(noise.confidence_jitter >= 0.0 && noise.confidence_jitter <= 1.0)) {
    throw Error("confidence jitter outside [0, 1]");
  }
  SynthRng rng(noise.seed);
  std::vector<InstanceRecord> out;
  for (const auto& r : scene.records) {
    const bool dropped = rng.uniform() < noise.dropout;
    const double jitter = rng.uniform();
    if (dropped) continue;
    InstanceRecord det = r;
    det.confidence = 1.0 - noise.confidence_jitter * jitter;
    out.push_back(std::move(det));
  }
  return out;
}

}  // namespace litterscope

#include "litterscope/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "litterscope/error.hpp"

namespace litterscope {

namespace {

void require_polygon(std::span<const Point> polygon) {
  if (polygon.size() < 3) throw Error("polygon needs at least 3 vertices");
  for (const auto& p : polygon) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error("polygon has a non-finite coordinate");
    }
  }
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed-segment intersection, touching included.
bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

std::vector<Point> without_repeats(std::span<const Point> polygon) {
  std::vector<Point> out;
  out.reserve(polygon.size());
  for (const auto& p : polygon) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

}  // namespace

BoundingBox bounding_box(std::span<const Point> polygon) {
  BoundingBox box{std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  for (const auto& p : polygon) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

std::vector<PixelSpan> rasterize_spans(std::span<const Point> polygon) {
  require_polygon(polygon);
  const auto box = bounding_box(polygon);
  // Rows whose center y + 0.5 lies in [min_y, max_y).
  const auto row_begin = static_cast<std::int64_t>(std::ceil(box.min_y - 0.5));
  const auto row_end = static_cast<std::int64_t>(std::ceil(box.max_y - 0.5));

  struct Edge {
    Point lo;  // smaller y
    Point hi;
  };
  std::vector<Edge> edges;
  edges.reserve(polygon.size());
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % polygon.size()];
    if (a.y == b.y) continue;  // horizontal edges never cross a scanline
    edges.push_back(a.y < b.y ? Edge{a, b} : Edge{b, a});
  }

  std::vector<PixelSpan> spans;
  std::vector<double> crossings;
  for (std::int64_t row = row_begin; row < row_end; ++row) {
    const double yc = static_cast<double>(row) + 0.5;
    crossings.clear();
    for (const auto& e : edges) {
      // Half-open in y: a center on an upper vertex counts, on a lower one not.
      if (e.lo.y <= yc && yc < e.hi.y) {
        crossings.push_back(e.lo.x + (yc - e.lo.y) * (e.hi.x - e.lo.x) / (e.hi.y - e.lo.y));
      }
    }
    std::sort(crossings.begin(), crossings.end());
    for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
      // Centers with left <= x + 0.5 < right.
      const auto begin = static_cast<std::int64_t>(std::ceil(crossings[k] - 0.5));
      const auto end = static_cast<std::int64_t>(std::ceil(crossings[k + 1] - 0.5));
      if (end <= begin) continue;
      if (!spans.empty() && spans.back().y == row && spans.back().x_end >= begin) {
        spans.back().x_end = std::max(spans.back().x_end, end);
      } else {
        spans.push_back({row, begin, end});
      }
    }
  }
  return spans;
}

PixelFootprint rasterize(std::span<const Point> polygon, std::int64_t instance_id) {
  const auto spans = rasterize_spans(polygon);
  if (spans.empty()) throw Error("empty rasterization");
  PixelFootprint fp;
  fp.instance_id = instance_id;
  fp.bbox = {spans.front().x_begin, spans.front().y, spans.front().x_end,
             spans.back().y + 1};
  for (const auto& s : spans) {
    fp.pixel_count += s.x_end - s.x_begin;
    fp.bbox.x0 = std::min(fp.bbox.x0, s.x_begin);
    fp.bbox.x1 = std::max(fp.bbox.x1, s.x_end);
  }
  return fp;
}

bool is_simple(std::span<const Point> polygon) {
  const auto pts = without_repeats(polygon);
  const std::size_t n = pts.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point& c = pts[j];
      const Point& d = pts[(j + 1) % n];
      const bool next = j == i + 1;
      const bool wrap = i == 0 && j == n - 1;
      if (next || wrap) {
        // Shared vertex s; the edges must not double back over each other.
        const Point& s = next ? b : a;
        const Point& p = next ? a : b;
        const Point& q = next ? d : c;
        if (cross(s, p, q) == 0.0 &&
            (p.x - s.x) * (q.x - s.x) + (p.y - s.y) * (q.y - s.y) > 0.0) {
          return false;
        }
        continue;
      }
      if (segments_touch(a, b, c, d)) return false;
    }
  }
  return true;
}

double shoelace_area(std::span<const Point> polygon) {
  require_polygon(polygon);
  if (!is_simple(polygon)) throw Error("polygon is self-intersecting");
  const Point& o = polygon.front();
  double twice = 0.0;
  for (std::size_t k = 0; k < polygon.size(); ++k) {
    const Point& p = polygon[k];
    const Point& q = polygon[(k + 1) % polygon.size()];
    twice += (p.x - o.x) * (q.y - o.y) - (q.x - o.x) * (p.y - o.y);
  }
  return std::abs(twice) / 2.0;
}

PhysicalArea physical_area(const PixelFootprint& footprint, double gsd) {
  if (!(gsd > 0.0) || !std::isfinite(gsd)) throw Error("gsd must be > 0");
  if (footprint.pixel_count < 1) throw Error("footprint has no pixels");
  const double pixel_area = gsd * gsd;
  return {footprint.instance_id,
          static_cast<double>(footprint.pixel_count) * pixel_area};
}

ProjectedCentroid instance_centroid(std::span<const Point> polygon, double gsd,
                                    std::int64_t instance_id) {
  require_polygon(polygon);
  if (!(gsd > 0.0)) throw Error("gsd must be > 0");
  // Relative to the first vertex to limit cancellation far from the origin.
  const Point& o = polygon.front();
  double twice_area = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < polygon.size(); ++k) {
    const double px = polygon[k].x - o.x;
    const double py = polygon[k].y - o.y;
    const double qx = polygon[(k + 1) % polygon.size()].x - o.x;
    const double qy = polygon[(k + 1) % polygon.size()].y - o.y;
    const double c = px * qy - qx * py;
    twice_area += c;
    sx += (px + qx) * c;
    sy += (py + qy) * c;
  }
  if (twice_area == 0.0) throw Error("zero-area polygon has no centroid");
  const double cx = o.x + sx / (3.0 * twice_area);
  const double cy = o.y + sy / (3.0 * twice_area);
  return {instance_id, cx * gsd, cy * gsd};
}

}  // namespace litterscope

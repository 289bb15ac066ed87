#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "litterscope/ingest.hpp"

namespace litterscope {

/// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct PixelBox {
  std::int64_t x0 = 0;
  std::int64_t y0 = 0;
  std::int64_t x1 = 0;
  std::int64_t y1 = 0;

  std::int64_t width() const { return x1 - x0; }
  std::int64_t height() const { return y1 - y0; }
  std::int64_t area() const { return width() * height(); }
  bool intersects(const PixelBox& o) const {
    return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1;
  }
  bool operator==(const PixelBox&) const = default;
};

/// Pixels [x_begin, x_end) of row y.
struct PixelSpan {
  std::int64_t y;
  std::int64_t x_begin;
  std::int64_t x_end;
  bool operator==(const PixelSpan&) const = default;
};

struct PixelFootprint {
  std::int64_t instance_id = 0;
  std::int64_t pixel_count = 0;  // n_i
  PixelBox bbox;                 // tight box of the covered pixels
};

struct PhysicalArea {
  std::int64_t instance_id = 0;
  double area_m2 = 0.0;  // A_i
};

struct ProjectedCentroid {
  std::int64_t instance_id = 0;
  double x_m = 0.0;
  double y_m = 0.0;
};

// Pixel (i, j) belongs to a polygon when its center (i + 0.5, j + 0.5) is
// inside. Centers lying exactly on an edge follow the top-left rule: they
// count on top and left edges and not on bottom and right edges (y grows
// downward). Adjacent polygons sharing an edge therefore never share a pixel.

/// Row spans of the covered pixels, ascending by row then column.
std::vector<PixelSpan> rasterize_spans(std::span<const Point> polygon);

/// Scanline fill. Throws Error for < 3 vertices, non-finite coordinates or
/// when no pixel center is covered ("empty rasterization").
PixelFootprint rasterize(std::span<const Point> polygon,
                         std::int64_t instance_id = 0);

/// False when two non-adjacent edges touch or adjacent edges fold back.
bool is_simple(std::span<const Point> polygon);

/// Unsigned polygon area in px^2. Throws Error for < 3 vertices or a
/// self-intersecting polygon.
double shoelace_area(std::span<const Point> polygon);

/// A_i = n_i * gsd^2. Throws Error when gsd <= 0 or the footprint is empty.
PhysicalArea physical_area(const PixelFootprint& footprint, double gsd);

/// Area-weighted polygon centroid, scaled from pixels to meters.
/// Throws Error for a zero-area polygon.
ProjectedCentroid instance_centroid(std::span<const Point> polygon, double gsd,
                                    std::int64_t instance_id = 0);

/// Vertex bounding box in pixel units (not pixel-snapped).
struct BoundingBox {
  double min_x, min_y, max_x, max_y;
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};
BoundingBox bounding_box(std::span<const Point> polygon);

}  // namespace litterscope

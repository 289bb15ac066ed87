#include <doctest.h>

#include <cmath>
#include <random>

#include "litterscope/error.hpp"
#include "litterscope/geometry.hpp"
#include "oracles.hpp"

using namespace litterscope;

namespace {

Polygon rect(double x, double y, double w, double h) {
  return {{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}};
}

Polygon random_convex(std::mt19937_64& rng, double cx, double cy, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts;
  for (int i = 0; i < 24; ++i) pts.push_back({cx + radius * u(rng), cy + radius * u(rng)});
  return oracle::convex_hull(pts);
}

}  // namespace

TEST_CASE("axis-aligned square covers its pixels") {
  const auto fp = rasterize(rect(0, 0, 10, 10), 5);
  CHECK(fp.instance_id == 5);
  CHECK(fp.pixel_count == 100);
  CHECK(fp.bbox == PixelBox{0, 0, 10, 10});
  CHECK(rasterize(rect(3, 7, 2, 2)).pixel_count == 4);
}

TEST_CASE("shared edges do not double count") {
  // Two halves of a 10x10 square split on a vertical and a diagonal line.
  const Polygon left = rect(0, 0, 5, 10);
  const Polygon right = rect(5, 0, 5, 10);
  CHECK(rasterize(left).pixel_count + rasterize(right).pixel_count == 100);

  const Polygon lower = {{0, 0}, {10, 0}, {10, 10}};
  const Polygon upper = {{0, 0}, {10, 10}, {0, 10}};
  const auto a = oracle::pixel_set(lower);
  const auto b = oracle::pixel_set(upper);
  CHECK(rasterize(lower).pixel_count + rasterize(upper).pixel_count == 100);
  for (const auto& p : a) CHECK(b.count(p) == 0);
}

TEST_CASE("rasterization matches brute-force point-in-polygon") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  // Triangles, including ones with half-integer vertices.
  for (int trial = 0; trial < 300; ++trial) {
    Polygon tri;
    for (int k = 0; k < 3; ++k) {
      double x = u(rng), y = u(rng);
      if (trial % 3 == 0) {
        x = std::round(x * 2) / 2;
        y = std::round(y * 2) / 2;
      }
      tri.push_back({x, y});
    }
    const auto expected = oracle::pixel_set(tri);
    oracle::PixelSet got;
    for (const auto& s : rasterize_spans(tri)) {
      for (auto x = s.x_begin; x < s.x_end; ++x) got.insert({x, s.y});
    }
    CHECK(got == expected);
  }
  // Non-convex simple polygon.
  const Polygon ell = {{0, 0}, {20, 0}, {20, 4}, {4, 4}, {4, 20}, {0, 20}};
  CHECK(rasterize(ell).pixel_count == oracle::pixel_count(ell));
  CHECK(rasterize(ell).pixel_count == 80 + 64);
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(rasterize(Polygon{{0, 0}, {5, 5}}), Error);
  CHECK_THROWS_WITH_AS(rasterize(rect(0.1, 0.1, 0.3, 0.3)),
                       doctest::Contains("empty rasterization"), Error);
  CHECK_THROWS_AS(rasterize(Polygon{{0, 0}, {NAN, 0}, {1, 1}}), Error);
}

TEST_CASE("shoelace area") {
  CHECK(shoelace_area(rect(0, 0, 10, 10)) == 100.0);
  const Polygon tri = {{0, 0}, {10, 0}, {0, 10}};
  CHECK(shoelace_area(tri) == 50.0);
  const Polygon rev(tri.rbegin(), tri.rend());
  CHECK(shoelace_area(rev) == 50.0);
  const Polygon bowtie = {{0, 0}, {10, 10}, {10, 0}, {0, 10}};
  CHECK_FALSE(is_simple(bowtie));
  CHECK_THROWS_AS(shoelace_area(bowtie), Error);
  CHECK(is_simple(rect(0, 0, 3, 3)));
}

TEST_CASE("physical area") {
  const auto fp = rasterize(rect(0, 0, 10, 10), 1);
  const double a = physical_area(fp, 0.0017).area_m2;
  CHECK(std::abs(a - 2.89e-4) <= std::nextafter(2.89e-4, 1.0) - 2.89e-4);
  CHECK_THROWS_AS(physical_area(fp, 0.0), Error);
  CHECK_THROWS_AS(physical_area(PixelFootprint{}, 0.0017), Error);

  // Convex polygons: pixel count tracks the shoelace area.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto poly = random_convex(rng, 500, 500, 60);
    const double exact = shoelace_area(poly);
    const double counted = static_cast<double>(rasterize(poly).pixel_count);
    CHECK(std::abs(counted - exact) <= 0.02 * exact);
  }
}

TEST_CASE("pixel count invariances") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto poly = random_convex(rng, 50, 50, 20);
    const auto n = rasterize(poly).pixel_count;
    // Integer translations preserve the count exactly.
    Polygon moved = poly;
    for (auto& p : moved) {
      p.x += 137;
      p.y -= 29;
    }
    CHECK(rasterize(moved).pixel_count == n);
    // Scaling by k multiplies the count by about k^2.
    Polygon scaled = poly;
    for (auto& p : scaled) {
      p.x *= 4;
      p.y *= 4;
    }
    const double ratio = static_cast<double>(rasterize(scaled).pixel_count) /
                         static_cast<double>(n);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
  }
}

TEST_CASE("centroids") {
  const auto c = instance_centroid(rect(0, 0, 10, 10), 0.0017, 4);
  CHECK(c.instance_id == 4);
  CHECK(c.x_m == doctest::Approx(5 * 0.0017));
  CHECK(c.y_m == doctest::Approx(5 * 0.0017));

  const Polygon tri = {{0, 0}, {30, 0}, {0, 30}};
  const auto t = instance_centroid(tri, 1.0);
  CHECK(t.x_m == doctest::Approx(10.0));
  CHECK(t.y_m == doctest::Approx(10.0));

  // Far from the origin, precision holds.
  const auto far = instance_centroid(rect(1e6, 2e6, 4, 2), 1.0);
  CHECK(far.x_m == doctest::Approx(1e6 + 2).epsilon(1e-14));
  CHECK(far.y_m == doctest::Approx(2e6 + 1).epsilon(1e-14));

  CHECK_THROWS_AS(instance_centroid(Polygon{{0, 0}, {1, 1}, {2, 2}}, 1.0), Error);
}

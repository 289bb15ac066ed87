#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the code path it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "litterscope/ingest.hpp"

namespace oracle {

using litterscope::Point;

using PixelSet = std::set<std::pair<std::int64_t, std::int64_t>>;  // (x, y)

// Point-in-polygon by crossing parity for every pixel center in the bounding
// box. Edges are half-open in y; a crossing at or left of the center counts,
// which puts centers on left edges inside and on right edges outside.
inline bool center_inside(std::span<const Point> poly, double xc, double yc) {
  int parity = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Point a = poly[i];
    Point b = poly[(i + 1) % poly.size()];
    if (a.y == b.y) continue;
    if (a.y > b.y) std::swap(a, b);
    if (!(a.y <= yc && yc < b.y)) continue;
    const double x = a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y);
    if (x <= xc) parity ^= 1;
  }
  return parity == 1;
}

inline PixelSet pixel_set(std::span<const Point> poly) {
  double x0 = poly[0].x, x1 = poly[0].x, y0 = poly[0].y, y1 = poly[0].y;
  for (const auto& p : poly) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  PixelSet out;
  for (auto j = static_cast<std::int64_t>(std::floor(y0)) - 1;
       j <= static_cast<std::int64_t>(std::ceil(y1)); ++j) {
    for (auto i = static_cast<std::int64_t>(std::floor(x0)) - 1;
         i <= static_cast<std::int64_t>(std::ceil(x1)); ++i) {
      if (center_inside(poly, i + 0.5, j + 0.5)) out.insert({i, j});
    }
  }
  return out;
}

inline std::int64_t pixel_count(std::span<const Point> poly) {
  return static_cast<std::int64_t>(pixel_set(poly).size());
}

inline double set_iou(const PixelSet& a, const PixelSet& b) {
  std::size_t inter = 0;
  for (const auto& p : a) inter += b.count(p);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb, double whole, double tol,
                      int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

inline double t_density(double t, int df) {
  const double nu = df;
  const double log_c = std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) -
                       0.5 * std::log(nu * std::numbers::pi);
  return std::exp(log_c - (nu + 1.0) / 2.0 * std::log1p(t * t / nu));
}

// CDF as 1/2 plus the integral of the density from 0, split into unit
// pieces so each panel stays smooth.
inline double t_cdf_quadrature(double t, int df) {
  const auto f = [df](double x) { return t_density(x, df); };
  const double a = std::abs(t);
  double acc = 0.0;
  double lo = 0.0;
  while (lo < a) {
    const double hi = std::min(a, lo + 1.0);
    acc += integrate(f, lo, hi);
    lo = hi;
  }
  return t >= 0 ? 0.5 + acc : 0.5 - acc;
}

// Area under the raw precision-recall step curve: each true positive adds
// (1 / n_gt) * precision at that rank.
inline double step_curve_ap(const std::vector<bool>& ranked_hits, std::int64_t n_gt) {
  double area = 0.0;
  std::int64_t tp = 0;
  for (std::size_t i = 0; i < ranked_hits.size(); ++i) {
    if (!ranked_hits[i]) continue;
    ++tp;
    area += (1.0 / static_cast<double>(n_gt)) * static_cast<double>(tp) /
            static_cast<double>(i + 1);
  }
  return area;
}

// Kolmogorov-Smirnov statistic of a sample against an analytic CDF.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

// Monotone-chain convex hull, counter-clockwise without collinear points.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  const auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline double hull_area(const std::vector<Point>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return std::abs(s) / 2.0;
}

// Minimal well-formedness check: balanced tags, quoted attributes, a single
// root element and no stray '<' or '&'.
inline bool well_formed_xml(const std::string& doc) {
  std::vector<std::string> stack;
  bool seen_root = false;
  std::size_t i = 0;
  while (i < doc.size()) {
    if (doc[i] == '&') {
      const auto semi = doc.find(';', i);
      if (semi == std::string::npos || semi - i > 6) return false;
      i = semi + 1;
      continue;
    }
    if (doc[i] != '<') {
      ++i;
      continue;
    }
    const auto close = doc.find('>', i);
    if (close == std::string::npos) return false;
    std::string tag = doc.substr(i + 1, close - i - 1);
    i = close + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (stack.empty()) {
      if (seen_root) return false;
      seen_root = true;
    }
    if (!self_closing) stack.push_back(name);
  }
  return seen_root && stack.empty();
}

}  // namespace oracle

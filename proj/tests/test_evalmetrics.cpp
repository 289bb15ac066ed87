#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "litterscope/error.hpp"
#include "litterscope/evalmetrics.hpp"
#include "oracles.hpp"

using namespace litterscope;

namespace {

Polygon rect(double x, double y, double w, double h) {
  return {{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}};
}

EvalInstance inst(std::int64_t id, const char* code, const Polygon& poly, double conf = 1.0) {
  return EvalInstance{id, GCode(code), conf, PixelMask::from_polygon(poly)};
}

struct OracleCounts {
  std::int64_t tp = 0, fp = 0, fn = 0;
};

// Plain greedy over pixel sets: highest confidence first, each detection
// claims the best remaining ground truth of its category.
OracleCounts oracle_greedy(const std::vector<std::tuple<std::int64_t, std::string, double, Polygon>>& dets,
                           const std::vector<std::tuple<std::int64_t, std::string, Polygon>>& gts,
                           double threshold) {
  std::vector<std::size_t> order(dets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (std::get<2>(dets[a]) != std::get<2>(dets[b])) return std::get<2>(dets[a]) > std::get<2>(dets[b]);
    return std::get<0>(dets[a]) < std::get<0>(dets[b]);
  });
  std::vector<oracle::PixelSet> gt_sets;
  for (const auto& g : gts) gt_sets.push_back(oracle::pixel_set(std::get<2>(g)));
  std::vector<bool> used(gts.size(), false);
  OracleCounts out;
  for (std::size_t d : order) {
    const auto ds = oracle::pixel_set(std::get<3>(dets[d]));
    double best = -1;
    std::size_t best_g = 0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (used[g] || std::get<1>(gts[g]) != std::get<1>(dets[d])) continue;
      const double iou = oracle::set_iou(ds, gt_sets[g]);
      if (iou >= threshold && iou > best) {
        best = iou;
        best_g = g;
      }
    }
    if (best >= 0) {
      used[best_g] = true;
      ++out.tp;
    } else {
      ++out.fp;
    }
  }
  out.fn = static_cast<std::int64_t>(std::count(used.begin(), used.end(), false));
  return out;
}

}  // namespace

TEST_CASE("mask IoU") {
  const auto a = PixelMask::from_polygon(rect(0, 0, 10, 10));
  const auto b = PixelMask::from_polygon(rect(20, 0, 10, 10));
  const auto c = PixelMask::from_polygon(rect(5, 0, 10, 10));
  CHECK(mask_iou(a, a) == 1.0);
  CHECK(mask_iou(a, b) == 0.0);
  CHECK(mask_iou(a, c) == doctest::Approx(1.0 / 3));
  CHECK(mask_iou(c, a) == mask_iou(a, c));
  CHECK_THROWS_AS(mask_iou(a, PixelMask{}), Error);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 30);
  for (int t = 0; t < 100; ++t) {
    const Polygon p = {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const Polygon q = rect(u(rng), u(rng), 1 + u(rng), 1 + u(rng));
    const auto ps = oracle::pixel_set(p);
    if (ps.empty()) continue;
    CHECK(mask_iou(PixelMask::from_polygon(p), PixelMask::from_polygon(q)) ==
          doctest::Approx(oracle::set_iou(ps, oracle::pixel_set(q))).epsilon(1e-12));
  }
}

TEST_CASE("greedy matching") {
  const std::vector<EvalInstance> gt = {inst(1, "G4", rect(0, 0, 10, 10))};
  SUBCASE("perfect detection") {
    const std::vector<EvalInstance> det = {inst(1, "G4", rect(0, 0, 10, 10), 0.9)};
    const auto m = match(det, gt);
    CHECK(m.tp() == 1);
    CHECK(m.fp() == 0);
    CHECK(m.fn() == 0);
    CHECK(m.pairs[0].iou == 1.0);
  }
  SUBCASE("higher confidence wins the shared ground truth") {
    const std::vector<EvalInstance> det = {inst(7, "G4", rect(1, 0, 10, 10), 0.8),
                                           inst(8, "G4", rect(0, 1, 10, 10), 0.9)};
    const auto m = match(det, gt);
    REQUIRE(m.tp() == 1);
    CHECK(m.pairs[0].detection_id == 8);
    CHECK(m.unmatched_detections == std::vector<std::int64_t>{7});
  }
  SUBCASE("categories must agree unless disabled") {
    const std::vector<EvalInstance> det = {inst(1, "G18", rect(0, 0, 10, 10), 0.9)};
    CHECK(match(det, gt).tp() == 0);
    CHECK(match(det, gt, 0.5, false).tp() == 1);
  }
}

TEST_CASE("random fixtures agree with an independent greedy matcher") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pos(0, 120);
  std::uniform_real_distribution<double> size(4, 20);
  std::uniform_real_distribution<double> jitter(-4, 4);
  const char* codes[] = {"G4", "G76"};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::tuple<std::int64_t, std::string, Polygon>> gts;
    std::vector<std::tuple<std::int64_t, std::string, double, Polygon>> dets;
    for (int i = 0; i < 30; ++i) {
      gts.emplace_back(i + 1, codes[rng() % 2], rect(pos(rng), pos(rng), size(rng), size(rng)));
    }
    for (int i = 0; i < 30; ++i) {
      const auto& [gid, code, poly] = gts[rng() % 30];
      Polygon moved = poly;
      const double dx = jitter(rng), dy = jitter(rng);
      for (auto& p : moved) {
        p.x += dx;
        p.y += dy;
      }
      const double conf = std::round(std::uniform_real_distribution<double>(0, 1)(rng) * 10) / 10;
      dets.emplace_back(i + 1, rng() % 5 ? code : codes[rng() % 2], conf, moved);
    }
    std::vector<EvalInstance> d, g;
    for (const auto& [id, code, conf, poly] : dets) d.push_back(inst(id, code.c_str(), poly, conf));
    for (const auto& [id, code, poly] : gts) g.push_back(inst(id, code.c_str(), poly));
    for (double thr : {0.3, 0.5, 0.7}) {
      const auto m = match(d, g, thr);
      const auto o = oracle_greedy(dets, gts, thr);
      CHECK(m.tp() == o.tp);
      CHECK(m.fp() == o.fp);
      CHECK(m.fn() == o.fn);
      for (const auto& p : m.pairs) CHECK(p.iou >= thr);
    }
    // Raising the threshold never adds true positives.
    std::int64_t prev = match(d, g, 0.05).tp();
    for (double thr = 0.1; thr <= 1.0; thr += 0.05) {
      const auto tp = match(d, g, thr).tp();
      CHECK(tp <= prev);
      prev = tp;
    }
  }
}

TEST_CASE("precision and recall") {
  MatchSet m;
  for (int i = 0; i < 7; ++i) m.pairs.push_back({i, i, 1.0});
  m.unmatched_detections = {20, 21, 22};
  m.unmatched_gts = {30, 31, 32, 33, 34, 35, 36};
  const auto pr = precision_recall(m);
  CHECK(pr.precision == doctest::Approx(0.7));
  CHECK(pr.recall == doctest::Approx(0.5));

  const auto none = precision_recall(MatchSet{});
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.precision_undefined);
  CHECK(none.recall_undefined);
}

TEST_CASE("average precision") {
  const std::vector<EvalInstance> one_gt = {inst(1, "G4", rect(0, 0, 10, 10))};
  SUBCASE("single good detection") {
    const std::vector<EvalInstance> det = {inst(1, "G4", rect(0, 0, 10, 9), 0.5)};
    CHECK(average_precision(det, one_gt, GCode("G4")).ap == 1.0);
  }
  SUBCASE("hit, miss, hit over two ground truths") {
    const std::vector<EvalInstance> gts = {inst(1, "G4", rect(0, 0, 10, 10)),
                                           inst(2, "G4", rect(50, 0, 10, 10))};
    const std::vector<EvalInstance> det = {inst(1, "G4", rect(0, 0, 10, 10), 0.9),
                                           inst(2, "G4", rect(100, 0, 10, 10), 0.8),
                                           inst(3, "G4", rect(50, 0, 10, 10), 0.7)};
    const auto ap = average_precision(det, gts, GCode("G4"));
    const double exact = oracle::step_curve_ap({true, false, true}, 2);
    CHECK(exact == doctest::Approx(0.5 + 0.5 * 2.0 / 3.0));
    CHECK(std::abs(ap.ap - exact) <= 0.01);
    REQUIRE(ap.curve.size() == 3);
    CHECK(ap.curve[2].recall == 1.0);
  }
  SUBCASE("no detections") {
    CHECK(average_precision(std::vector<EvalInstance>{}, one_gt, GCode("G4")).ap == 0.0);
  }
  SUBCASE("appending a lowest-confidence false positive never raises AP") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
      std::vector<EvalInstance> gts, dets;
      for (int i = 0; i < 8; ++i) gts.push_back(inst(i + 1, "G4", rect(i * 20.0, 0, 10, 10)));
      for (int i = 0; i < 8; ++i) {
        const double x = (rng() % 3 == 0) ? 500.0 + i * 20 : (rng() % 8) * 20.0;
        dets.push_back(inst(i + 1, "G4", rect(x, 0, 10, 10), 0.2 + 0.1 * i));
      }
      const double before = average_precision(dets, gts, GCode("G4")).ap;
      dets.push_back(inst(99, "G4", rect(900, 0, 10, 10), 0.1));
      CHECK(average_precision(dets, gts, GCode("G4")).ap <= before);
    }
  }
}

TEST_CASE("mAP is a plain mean over categories with ground truth") {
  std::vector<APResult> r(3);
  r[0].ap = 1.0;
  r[0].gt_count = 2;
  r[1].ap = 0.5;
  r[1].gt_count = 5;
  r[2].ap = 0.0;
  r[2].gt_count = 0;
  CHECK(map50(r) == 0.75);
  std::swap(r[0], r[1]);
  CHECK(map50(r) == 0.75);
  CHECK_THROWS_AS(map50(std::vector<APResult>(2)), Error);
}

TEST_CASE("evaluate") {
  std::vector<EvalInstance> gts;
  for (int i = 0; i < 6; ++i) {
    gts.push_back(inst(i + 1, i % 2 ? "G4" : "G18", rect(i * 30.0, 10, 12, 12)));
  }
  SUBCASE("perfect detection") {
    const auto r = evaluate(gts, gts);
    CHECK(r.map == 1.0);
    CHECK(r.at_cut.precision == 1.0);
    CHECK(r.at_cut.recall == 1.0);
    CHECK(r.best_f1.f1 == 1.0);
    REQUIRE(r.per_category.size() == 2);
    CHECK(r.per_category[0].gcode == GCode("G4"));
  }
  SUBCASE("disjoint detections") {
    std::vector<EvalInstance> det;
    for (int i = 0; i < 6; ++i) det.push_back(inst(i + 1, "G4", rect(500 + i * 30.0, 10, 12, 12), 0.9));
    const auto r = evaluate(det, gts);
    CHECK(r.map == 0.0);
    CHECK(r.at_cut.precision == 0.0);
    CHECK(r.matches.fp() == 6);
  }
  SUBCASE("relabeling categories leaves mAP unchanged") {
    std::vector<EvalInstance> det;
    for (int i = 0; i < 6; ++i) {
      auto d = gts[i];
      d.confidence = 0.1 * (i + 1);
      if (i == 2) d.mask = PixelMask::from_polygon(rect(700, 0, 5, 5));
      det.push_back(d);
    }
    const double base = evaluate(det, gts).map;
    auto relabel = [](std::vector<EvalInstance> v) {
      for (auto& e : v) e.gcode = GCode(e.gcode == GCode("G4") ? "G151" : "G7");
      return v;
    };
    CHECK(evaluate(relabel(det), relabel(gts)).map == base);
  }
  SUBCASE("confidence cut") {
    std::vector<EvalInstance> det = gts;
    for (int i = 0; i < 6; ++i) det[i].confidence = 0.1 * (i + 1);
    const auto r = evaluate(det, gts, 0.5, 0.35);
    CHECK(r.matches.tp() == 3);  // 0.4, 0.5 and 0.6 pass the cut
    CHECK(r.at_cut.recall == doctest::Approx(0.5));
    CHECK(r.map == 1.0);
  }
  CHECK_THROWS_AS(evaluate(gts, std::vector<EvalInstance>{}), Error);
}

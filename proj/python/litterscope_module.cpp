#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "litterscope/error.hpp"
#include "litterscope/evalmetrics.hpp"
#include "litterscope/fragmentation.hpp"
#include "litterscope/geometry.hpp"
#include "litterscope/ingest.hpp"
#include "litterscope/manifest.hpp"
#include "litterscope/risk.hpp"
#include "litterscope/sourcesink.hpp"
#include "litterscope/stats.hpp"
#include "litterscope/survey.hpp"
#include "litterscope/synth.hpp"
#include "litterscope/tiler.hpp"

namespace py = pybind11;
namespace ls = litterscope;

// Points travel as (x, y) tuples.
namespace pybind11::detail {
template <>
struct type_caster<ls::Point> {
  PYBIND11_TYPE_CASTER(ls::Point, const_name("tuple[float, float]"));

  bool load(handle src, bool convert) {
    if (!isinstance<sequence>(src)) return false;
    const auto seq = reinterpret_borrow<sequence>(src);
    if (seq.size() != 2) return false;
    make_caster<double> x;
    make_caster<double> y;
    if (!x.load(seq[0], convert) || !y.load(seq[1], convert)) return false;
    value = {cast_op<double>(x), cast_op<double>(y)};
    return true;
  }

  static handle cast(const ls::Point& p, return_value_policy, handle) {
    return py::make_tuple(p.x, p.y).release();
  }
};
}  // namespace pybind11::detail

namespace {

ls::AnnotationSchema schema_from(const std::string& name) {
  if (name == "json") return ls::AnnotationSchema::PolygonJson;
  if (name == "csv") return ls::AnnotationSchema::FlatCsv;
  throw ls::Error("schema must be 'json' or 'csv'");
}

std::optional<std::string> zone_name(const std::optional<ls::Zone>& zone) {
  if (!zone) return std::nullopt;
  return std::string(ls::to_string(*zone));
}

std::optional<ls::Zone> zone_from(const std::optional<std::string>& name) {
  if (!name) return std::nullopt;
  auto z = ls::parse_zone(*name);
  if (!z) throw ls::Error("unknown zone '" + *name + "'");
  return z;
}

ls::Segment segment_from(const std::string& name) {
  auto s = ls::parse_segment(name);
  if (!s) throw ls::Error("segment must be 'macro' or 'meso'");
  return *s;
}

const ls::Taxonomy& taxonomy_or_bundled(const ls::Taxonomy* taxonomy) {
  return taxonomy ? *taxonomy : ls::Taxonomy::bundled();
}

template <class T>
void gcode_property(py::class_<T>& cls) {
  cls.def_property(
      "gcode", [](const T& t) { return t.gcode.str(); },
      [](T& t, const std::string& code) { t.gcode = ls::GCode(code); });
}

}  // namespace

PYBIND11_MODULE(_litterscope, m) {
  m.doc() = "Physical metrics from beach-litter instance segmentations";
  m.attr("__version__") = std::string(ls::kToolVersion);

  auto error = py::register_exception<ls::Error>(m, "LitterscopeError", PyExc_ValueError);
  py::register_exception<ls::ParseError>(m, "ParseError", error.ptr());

  // --- configuration -------------------------------------------------------
  py::class_<ls::SurveyConfig>(m, "SurveyConfig")
      .def(py::init<>())
      .def_readwrite("gsd", &ls::SurveyConfig::gsd)
      .def_readwrite("tile_size", &ls::SurveyConfig::tile_size)
      .def_readwrite("bin_min", &ls::SurveyConfig::bin_min)
      .def_readwrite("bin_max", &ls::SurveyConfig::bin_max)
      .def_readwrite("bin_count", &ls::SurveyConfig::bin_count)
      .def_readwrite("macro_meso_threshold", &ls::SurveyConfig::macro_meso_threshold)
      .def_readwrite("sector_count", &ls::SurveyConfig::sector_count)
      .def("validate", &ls::SurveyConfig::validate)
      .def("__eq__", [](const ls::SurveyConfig& a, const ls::SurveyConfig& b) { return a == b; });
  m.def("parse_survey_config", &ls::parse_survey_config, py::arg("text"),
        py::arg("base") = ls::SurveyConfig{});

  // --- ingest --------------------------------------------------------------
  py::class_<ls::TaxonomyEntry> entry(m, "TaxonomyEntry");
  gcode_property(entry);
  entry.def_readonly("description", &ls::TaxonomyEntry::description)
      .def_property_readonly("group",
                             [](const ls::TaxonomyEntry& e) { return std::string(ls::to_string(e.group)); })
      .def_readonly("hazard_weight", &ls::TaxonomyEntry::hazard_weight);

  py::class_<ls::Taxonomy>(m, "Taxonomy")
      .def_static("bundled", &ls::Taxonomy::bundled, py::return_value_policy::reference)
      .def_static("load", &ls::load_taxonomy, py::arg("table"))
      .def("__len__", &ls::Taxonomy::size)
      .def("__contains__", [](const ls::Taxonomy& t, const std::string& code) {
        auto g = ls::GCode::parse(code);
        return g && t.contains(*g);
      })
      .def("__getitem__", [](const ls::Taxonomy& t, const std::string& code) {
        return t.at(ls::GCode(code));
      })
      .def_property_readonly("entries", [](const ls::Taxonomy& t) {
        return std::vector<ls::TaxonomyEntry>(t.entries().begin(), t.entries().end());
      });

  m.def("rank_to_weight", [](double rank) {
    const auto band = ls::rank_to_weight(rank);
    return py::make_tuple(band.low, band.high);
  });

  py::class_<ls::InstanceRecord> record(m, "InstanceRecord");
  record.def(py::init<>())
      .def(py::init([](std::int64_t id, const std::string& gcode, std::vector<ls::Point> polygon,
                       std::optional<double> confidence, std::optional<std::string> zone) {
             ls::InstanceRecord r;
             r.id = id;
             r.gcode = ls::GCode(gcode);
             r.polygon = std::move(polygon);
             r.confidence = confidence;
             r.zone = zone_from(zone);
             return r;
           }),
           py::arg("id"), py::arg("gcode"), py::arg("polygon"), py::arg("confidence") = py::none(),
           py::arg("zone") = py::none())
      .def_readwrite("id", &ls::InstanceRecord::id)
      .def_readwrite("polygon", &ls::InstanceRecord::polygon)
      .def_readwrite("confidence", &ls::InstanceRecord::confidence)
      .def_property(
          "zone", [](const ls::InstanceRecord& r) { return zone_name(r.zone); },
          [](ls::InstanceRecord& r, std::optional<std::string> z) { r.zone = zone_from(z); })
      .def_property(
          "tile",
          [](const ls::InstanceRecord& r) -> std::optional<py::tuple> {
            if (!r.tile) return std::nullopt;
            return py::make_tuple(r.tile->row, r.tile->col);
          },
          [](ls::InstanceRecord& r, std::optional<std::pair<std::int64_t, std::int64_t>> t) {
            if (t) {
              r.tile = ls::TileIndex{t->first, t->second};
            } else {
              r.tile.reset();
            }
          })
      .def("__eq__", [](const ls::InstanceRecord& a, const ls::InstanceRecord& b) { return a == b; })
      .def("__repr__", [](const ls::InstanceRecord& r) {
        return "<InstanceRecord id=" + std::to_string(r.id) + " " + r.gcode.str() + " " +
               std::to_string(r.polygon.size()) + " vertices>";
      });
  gcode_property(record);

  m.def(
      "parse_annotations",
      [](const std::string& text, const std::string& schema) {
        auto doc = ls::parse_annotations(text, schema_from(schema));
        py::list issues;
        for (const auto& i : doc.issues) {
          issues.append(py::dict(py::arg("index") = i.index, py::arg("line") = i.line,
                                 py::arg("message") = i.message));
        }
        return py::make_tuple(std::move(doc.records), issues, doc.gsd);
      },
      py::arg("text"), py::arg("schema") = "json",
      "Returns (records, issues, gsd). Raises ParseError for malformed documents.");
  m.def(
      "serialize_annotations",
      [](const std::vector<ls::InstanceRecord>& records, const std::string& schema,
         std::optional<double> gsd) { return ls::serialize_annotations(records, schema_from(schema), gsd); },
      py::arg("records"), py::arg("schema") = "json", py::arg("gsd") = py::none());
  m.def(
      "validate_instances",
      [](const std::vector<ls::InstanceRecord>& records, const ls::Taxonomy* taxonomy) {
        auto result = ls::validate_instances(records, taxonomy_or_bundled(taxonomy));
        py::list rejected;
        for (const auto& r : result.rejections) rejected.append(py::make_tuple(r.id, r.reason));
        return py::make_tuple(std::move(result.accepted), rejected);
      },
      py::arg("records"), py::arg("taxonomy") = nullptr);

  // --- geometry ------------------------------------------------------------
  m.def(
      "rasterize",
      [](const std::vector<ls::Point>& polygon) {
        const auto fp = ls::rasterize(polygon);
        return py::make_tuple(fp.pixel_count,
                              py::make_tuple(fp.bbox.x0, fp.bbox.y0, fp.bbox.x1, fp.bbox.y1));
      },
      py::arg("polygon"), "Returns (pixel_count, (x0, y0, x1, y1)) under the pixel-center rule.");
  m.def(
      "pixel_spans",
      [](const std::vector<ls::Point>& polygon) {
        std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
        for (const auto& s : ls::rasterize_spans(polygon)) out.emplace_back(s.y, s.x_begin, s.x_end);
        return out;
      },
      py::arg("polygon"));
  m.def("shoelace_area", [](const std::vector<ls::Point>& p) { return ls::shoelace_area(p); },
        py::arg("polygon"));
  m.def("is_simple", [](const std::vector<ls::Point>& p) { return ls::is_simple(p); },
        py::arg("polygon"));
  m.def(
      "physical_area",
      [](std::int64_t pixel_count, double gsd) {
        ls::PixelFootprint fp;
        fp.pixel_count = pixel_count;
        return ls::physical_area(fp, gsd).area_m2;
      },
      py::arg("pixel_count"), py::arg("gsd"));
  m.def(
      "instance_centroid",
      [](const std::vector<ls::Point>& p, double gsd) {
        const auto c = ls::instance_centroid(p, gsd);
        return py::make_tuple(c.x_m, c.y_m);
      },
      py::arg("polygon"), py::arg("gsd"));

  py::class_<ls::SurveyInstance> inst(m, "SurveyInstance");
  inst.def(py::init<>())
      .def(py::init([](std::int64_t id, const std::string& gcode, double area_m2, double x_m,
                       double y_m, std::optional<std::string> zone) {
             ls::SurveyInstance s;
             s.id = id;
             s.gcode = ls::GCode(gcode);
             s.area_m2 = area_m2;
             s.x_m = x_m;
             s.y_m = y_m;
             s.zone = zone_from(zone);
             return s;
           }),
           py::arg("id"), py::arg("gcode"), py::arg("area_m2"), py::arg("x_m") = 0.0,
           py::arg("y_m") = 0.0, py::arg("zone") = py::none())
      .def_readwrite("id", &ls::SurveyInstance::id)
      .def_readwrite("pixels", &ls::SurveyInstance::pixels)
      .def_readwrite("area_m2", &ls::SurveyInstance::area_m2)
      .def_readwrite("x_m", &ls::SurveyInstance::x_m)
      .def_readwrite("y_m", &ls::SurveyInstance::y_m)
      .def_property(
          "zone", [](const ls::SurveyInstance& s) { return zone_name(s.zone); },
          [](ls::SurveyInstance& s, std::optional<std::string> z) { s.zone = zone_from(z); });
  gcode_property(inst);

  m.def(
      "build_survey",
      [](const std::vector<ls::InstanceRecord>& records, double gsd, const ls::Taxonomy* taxonomy,
         int threads) {
        ls::Survey survey;
        {
          py::gil_scoped_release release;
          survey = ls::build_survey(records, taxonomy_or_bundled(taxonomy), gsd, threads);
        }
        py::list rejected;
        for (const auto& r : survey.rejections) rejected.append(py::make_tuple(r.id, r.reason));
        return py::make_tuple(std::move(survey.instances), rejected);
      },
      py::arg("records"), py::arg("gsd") = 0.0017, py::arg("taxonomy") = nullptr,
      py::arg("threads") = 1, "Returns (instances, rejections) for global-frame records.");

  // --- fragmentation -------------------------------------------------------
  py::class_<ls::SizeBin>(m, "SizeBin")
      .def_readonly("low", &ls::SizeBin::low)
      .def_readonly("high", &ls::SizeBin::high)
      .def_readonly("center", &ls::SizeBin::center)
      .def_readonly("count", &ls::SizeBin::count)
      .def_readonly("npd", &ls::SizeBin::npd);

  py::class_<ls::Binning>(m, "Binning")
      .def_readonly("bins", &ls::Binning::bins)
      .def_readonly("underflow", &ls::Binning::underflow)
      .def_readonly("overflow", &ls::Binning::overflow);

  py::class_<ls::PowerLawFit>(m, "PowerLawFit")
      .def_readonly("alpha", &ls::PowerLawFit::alpha)
      .def_readonly("log10_c", &ls::PowerLawFit::log10_c)
      .def_readonly("r_squared", &ls::PowerLawFit::r_squared)
      .def_readonly("p_value", &ls::PowerLawFit::p_value)
      .def_readonly("bins_used", &ls::PowerLawFit::bins_used)
      .def_property_readonly("segment",
                             [](const ls::PowerLawFit& f) { return std::string(ls::to_string(f.segment)); });

  m.def(
      "build_bins",
      [](double bin_min, double bin_max, int bin_count) {
        return ls::build_bins(bin_min, bin_max, bin_count).edges;
      },
      py::arg("bin_min") = 1e-4, py::arg("bin_max") = 10.0, py::arg("bin_count") = 14);
  m.def(
      "bin_areas",
      [](const std::vector<double>& areas, std::vector<double> edges) {
        return ls::bin_areas(areas, ls::BinEdges{std::move(edges)});
      },
      py::arg("areas"), py::arg("edges"));
  m.def(
      "fit_power_law",
      [](const std::vector<ls::SizeBin>& bins, const std::string& segment, double threshold) {
        return ls::fit_power_law(bins, segment_from(segment), threshold);
      },
      py::arg("bins"), py::arg("segment") = "macro", py::arg("threshold") = 6.25e-4);
  m.def(
      "fit_areas",
      [](const std::vector<double>& areas, const std::string& segment, const ls::SurveyConfig& config) {
        const auto binning = ls::bin_areas(areas, ls::build_bins(config));
        return ls::fit_power_law(binning.bins, segment_from(segment), config.macro_meso_threshold);
      },
      py::arg("areas"), py::arg("segment") = "macro", py::arg("config") = ls::SurveyConfig{},
      "Bins areas with the configured edges and fits one segment.");

  m.def("t_cdf", &ls::t_cdf, py::arg("t"), py::arg("df"));
  m.def("t_two_sided_p", &ls::t_two_sided_p, py::arg("t"), py::arg("df"));

  // --- risk ----------------------------------------------------------------
  py::class_<ls::Sector>(m, "Sector")
      .def_readonly("index", &ls::Sector::index)
      .def_readonly("lower", &ls::Sector::lower)
      .def_readonly("upper", &ls::Sector::upper)
      .def_property_readonly("length", &ls::Sector::length);

  py::class_<ls::SectorMetrics>(m, "SectorMetrics")
      .def_readonly("sector", &ls::SectorMetrics::sector)
      .def_readonly("count", &ls::SectorMetrics::count)
      .def_readonly("cci", &ls::SectorMetrics::cci)
      .def_readonly("eri", &ls::SectorMetrics::eri)
      .def_readonly("cci_norm", &ls::SectorMetrics::cci_norm)
      .def_readonly("eri_norm", &ls::SectorMetrics::eri_norm);

  py::class_<ls::CentroidShift>(m, "CentroidShift")
      .def_property_readonly("c_count",
                             [](const ls::CentroidShift& s) { return py::make_tuple(s.c_count.x, s.c_count.y); })
      .def_property_readonly("c_eri",
                             [](const ls::CentroidShift& s) { return py::make_tuple(s.c_eri.x, s.c_eri.y); })
      .def_readonly("delta", &ls::CentroidShift::delta);

  py::class_<ls::RiskReport>(m, "RiskReport")
      .def_readonly("sectors", &ls::RiskReport::sectors)
      .def_readonly("shift", &ls::RiskReport::shift);

  m.def(
      "partition_sectors",
      [](const std::vector<double>& coordinates, int k) { return ls::partition_sectors(coordinates, k); },
      py::arg("coordinates"), py::arg("k"));
  m.def(
      "compute_eri",
      [](const std::vector<ls::SurveyInstance>& instances, const ls::Taxonomy* taxonomy) {
        return ls::compute_eri(instances, taxonomy_or_bundled(taxonomy));
      },
      py::arg("instances"), py::arg("taxonomy") = nullptr);
  m.def("minmax_normalize",
        [](const std::vector<double>& values) { return ls::minmax_normalize(values); },
        py::arg("values"));
  m.def(
      "centroid_shift",
      [](const std::vector<ls::SurveyInstance>& instances, const ls::Taxonomy* taxonomy) {
        return ls::centroid_shift(instances, taxonomy_or_bundled(taxonomy));
      },
      py::arg("instances"), py::arg("taxonomy") = nullptr);
  m.def(
      "analyze_risk",
      [](const std::vector<ls::SurveyInstance>& instances, int sector_count, double axis_angle_deg,
         const ls::Taxonomy* taxonomy) {
        return ls::analyze_risk(instances, taxonomy_or_bundled(taxonomy), sector_count, axis_angle_deg);
      },
      py::arg("instances"), py::arg("sector_count") = 10, py::arg("axis_angle_deg") = 90.0,
      py::arg("taxonomy") = nullptr);

  // --- source/sink ---------------------------------------------------------
  py::class_<ls::GroupComposition>(m, "GroupComposition")
      .def_property_readonly("group",
                             [](const ls::GroupComposition& g) { return std::string(ls::to_string(g.group)); })
      .def_readonly("count", &ls::GroupComposition::count)
      .def_readonly("count_share", &ls::GroupComposition::count_share)
      .def_readonly("total_area_m2", &ls::GroupComposition::total_area_m2)
      .def_readonly("area_share", &ls::GroupComposition::area_share)
      .def_readonly("mean_item_area_m2", &ls::GroupComposition::mean_item_area_m2);

  m.def(
      "compose",
      [](const std::vector<ls::SurveyInstance>& instances, const ls::Taxonomy* taxonomy) {
        const auto groups = ls::compose(instances, taxonomy_or_bundled(taxonomy));
        return std::vector<ls::GroupComposition>(groups.begin(), groups.end());
      },
      py::arg("instances"), py::arg("taxonomy") = nullptr);
  m.def("overrepresentation", py::overload_cast<double, double>(&ls::overrepresentation),
        py::arg("count_share"), py::arg("area_share"));

  // --- evaluation ----------------------------------------------------------
  m.def(
      "mask_iou",
      [](const std::vector<ls::Point>& a, const std::vector<ls::Point>& b) {
        return ls::mask_iou(ls::PixelMask::from_polygon(a), ls::PixelMask::from_polygon(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "evaluate",
      [](const std::vector<ls::InstanceRecord>& detections,
         const std::vector<ls::InstanceRecord>& ground_truth, double iou_threshold,
         double confidence_cut) {
        const auto report = ls::evaluate(ls::to_eval_instances(detections),
                                         ls::to_eval_instances(ground_truth), iou_threshold,
                                         confidence_cut);
        py::dict per_category;
        for (const auto& c : report.per_category) {
          per_category[py::str(c.gcode.str())] =
              py::dict(py::arg("ap") = c.ap, py::arg("gt_count") = c.gt_count, py::arg("tp") = c.tp,
                       py::arg("fp") = c.fp, py::arg("fn") = c.fn);
        }
        return py::dict(
            py::arg("map50") = report.map, py::arg("precision") = report.at_cut.precision,
            py::arg("recall") = report.at_cut.recall, py::arg("tp") = report.matches.tp(),
            py::arg("fp") = report.matches.fp(), py::arg("fn") = report.matches.fn(),
            py::arg("per_category") = per_category,
            py::arg("best_f1") = py::dict(py::arg("confidence") = report.best_f1.confidence,
                                          py::arg("precision") = report.best_f1.precision,
                                          py::arg("recall") = report.best_f1.recall,
                                          py::arg("f1") = report.best_f1.f1));
      },
      py::arg("detections"), py::arg("ground_truth"), py::arg("iou_threshold") = 0.5,
      py::arg("confidence_cut") = 0.0);

  // --- tiling --------------------------------------------------------------
  m.def(
      "tile_grid",
      [](std::int64_t width, std::int64_t height, std::int64_t tile_size) {
        std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t,
                               std::int64_t, std::int64_t>>
            out;
        for (const auto& t : ls::tile_grid(width, height, tile_size)) {
          out.emplace_back(t.index.row, t.index.col, t.origin_x, t.origin_y, t.width, t.height);
        }
        return out;
      },
      py::arg("width"), py::arg("height"), py::arg("tile_size") = 512,
      "Row-major (row, col, origin_x, origin_y, width, height) tuples.");
  m.def(
      "to_global",
      [](const ls::InstanceRecord& r, std::int64_t width, std::int64_t height, std::int64_t tile_size) {
        return ls::to_global(r, ls::TileGrid(width, height, tile_size));
      },
      py::arg("record"), py::arg("width"), py::arg("height"), py::arg("tile_size") = 512);

  // --- synthetic surveys ---------------------------------------------------
  m.attr("RNG_ALGORITHM") = std::string(ls::kRngAlgorithm);
  m.def("sample_powerlaw", &ls::sample_powerlaw, py::arg("n"), py::arg("alpha"), py::arg("a"),
        py::arg("b"), py::arg("seed"));
  m.def("powerlaw_cdf", &ls::powerlaw_cdf, py::arg("s"), py::arg("alpha"), py::arg("a"), py::arg("b"));

  py::class_<ls::SynthConfig>(m, "SynthConfig")
      .def(py::init<>())
      .def_readwrite("n_instances", &ls::SynthConfig::n_instances)
      .def_readwrite("alpha_true", &ls::SynthConfig::alpha_true)
      .def_readwrite("area_min", &ls::SynthConfig::area_min)
      .def_readwrite("area_max", &ls::SynthConfig::area_max)
      .def_readwrite("gsd", &ls::SynthConfig::gsd)
      .def_readwrite("scene_width", &ls::SynthConfig::scene_width)
      .def_readwrite("scene_height", &ls::SynthConfig::scene_height)
      .def_readwrite("category_mix", &ls::SynthConfig::category_mix)
      .def_readwrite("intertidal_fraction", &ls::SynthConfig::intertidal_fraction)
      .def_readwrite("seed", &ls::SynthConfig::seed)
      .def_readwrite("max_attempts", &ls::SynthConfig::max_attempts)
      .def("validate", &ls::SynthConfig::validate);

  m.def(
      "generate_scene",
      [](const ls::SynthConfig& config, double dropout, double jitter) {
        ls::SynthScene scene;
        std::vector<ls::InstanceRecord> detections;
        {
          py::gil_scoped_release release;
          scene = ls::generate_scene(config);
          detections = ls::simulate_detections(scene, {dropout, jitter, config.seed + 1});
        }
        py::list truth;
        for (const auto& s : scene.instances) {
          truth.append(py::dict(py::arg("id") = s.id, py::arg("gcode") = s.gcode.str(),
                                py::arg("zone") = std::string(ls::to_string(s.zone)),
                                py::arg("true_area_m2") = s.true_area_m2,
                                py::arg("origin_px") = py::make_tuple(s.origin_x, s.origin_y),
                                py::arg("side_px") = s.side_px));
        }
        return py::make_tuple(std::move(scene.records), std::move(detections), truth);
      },
      py::arg("config"), py::arg("dropout") = 0.0, py::arg("jitter") = 0.0,
      "Returns (ground_truth_records, detection_records, truth). Detections use seed + 1.");
}

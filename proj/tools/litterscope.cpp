// litterscope: batch analyses of beach-litter instance segmentations.
//
//   litterscope [global flags] <areas|npd|risk|sourcesink|eval|synth|tiles> ...
//
// Every command writes its reports into --out-dir together with
// <command>.manifest.json, which records inputs, configuration and output
// digests. JSON and SVG reports carry the run id of that manifest.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "litterscope/charts.hpp"
#include "litterscope/config.hpp"
#include "litterscope/error.hpp"
#include "litterscope/evalmetrics.hpp"
#include "litterscope/fragmentation.hpp"
#include "litterscope/ingest.hpp"
#include "litterscope/manifest.hpp"
#include "litterscope/report.hpp"
#include "litterscope/risk.hpp"
#include "litterscope/sourcesink.hpp"
#include "litterscope/survey.hpp"
#include "litterscope/synth.hpp"
#include "litterscope/text.hpp"
#include "litterscope/tiler.hpp"

namespace fs = std::filesystem;
using namespace litterscope;

namespace {

struct GlobalOptions {
  std::optional<double> gsd;
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<std::int64_t> tile_size;
  std::optional<double> bin_min;
  std::optional<double> bin_max;
  std::optional<int> bin_count;
  std::optional<double> threshold;
  std::optional<int> sectors;
};

struct AnnotationInput {
  std::string path;
  std::string schema;  // "", "json" or "csv"
  std::optional<std::int64_t> scene_width;
  std::optional<std::int64_t> scene_height;
};

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

// Flag > config file > annotation document > built-in default.
SurveyConfig resolve_config(const GlobalOptions& g, std::optional<double> document_gsd,
                            RunManifest& manifest) {
  SurveyConfig config;
  bool gsd_from_file = false;
  if (!g.config_path.empty()) {
    const auto text = read_file(g.config_path);
    manifest.add_input(g.config_path, text);
    SurveyConfig probe;
    probe.gsd = std::numeric_limits<double>::quiet_NaN();
    probe = parse_survey_config(text, probe);
    gsd_from_file = !std::isnan(probe.gsd);
    if (!gsd_from_file) probe.gsd = config.gsd;
    config = probe;
  }
  if (g.gsd) {
    config.gsd = *g.gsd;
  } else if (!gsd_from_file && document_gsd) {
    config.gsd = *document_gsd;
  }
  if (g.tile_size) config.tile_size = *g.tile_size;
  if (g.bin_min) config.bin_min = *g.bin_min;
  if (g.bin_max) config.bin_max = *g.bin_max;
  if (g.bin_count) config.bin_count = *g.bin_count;
  if (g.threshold) config.macro_meso_threshold = *g.threshold;
  if (g.sectors) config.sector_count = *g.sectors;
  config.validate();
  manifest.config = config;
  return config;
}

Taxonomy resolve_taxonomy(const std::string& path, RunManifest& manifest) {
  if (path.empty()) {
    manifest.options["taxonomy"] = "bundled";
    return Taxonomy::bundled();
  }
  const auto text = read_file(path);
  manifest.add_input(path, text);
  return load_taxonomy(text);
}

AnnotationSchema resolve_schema(const AnnotationInput& in) {
  if (in.schema == "csv") return AnnotationSchema::FlatCsv;
  if (in.schema == "json") return AnnotationSchema::PolygonJson;
  return schema_for_path(in.path);
}

// Parses a document, reports dropped shapes and moves tile-local records into
// the global frame.
AnnotationDocument load_annotations(const AnnotationInput& in, std::int64_t tile_size,
                                    RunManifest& manifest) {
  const auto text = read_file(in.path);
  manifest.add_input(in.path, text);
  AnnotationDocument doc;
  if (trim(text).empty()) {
    warn("empty annotation file '" + in.path + "'");
    return doc;
  }
  doc = parse_annotations(text, resolve_schema(in));
  for (const auto& issue : doc.issues) {
    warn(in.path + ": shape " + std::to_string(issue.index) +
         (issue.line ? " (line " + std::to_string(issue.line) + ")" : "") + ": " +
         issue.message);
  }
  bool any_tile = false;
  std::int64_t max_row = 0;
  std::int64_t max_col = 0;
  for (const auto& r : doc.records) {
    if (!r.tile) continue;
    any_tile = true;
    max_row = std::max(max_row, r.tile->row);
    max_col = std::max(max_col, r.tile->col);
  }
  if (any_tile) {
    // Without explicit scene dimensions the grid spans every referenced tile.
    const TileGrid grid(in.scene_width.value_or((max_col + 1) * tile_size),
                        in.scene_height.value_or((max_row + 1) * tile_size), tile_size);
    for (auto& r : doc.records) r = to_global(std::move(r), grid);
  }
  if (doc.records.empty()) warn("'" + in.path + "' contains no usable shapes");
  return doc;
}

void report_rejections(const Survey& survey) {
  for (const auto& r : survey.rejections) {
    warn("instance " + std::to_string(r.id) + " rejected: " + r.reason);
  }
}

class OutputSet {
 public:
  OutputSet(std::string dir, std::string command) : dir_(std::move(dir)), command_(std::move(command)) {}

  void add(const std::string& name, std::string contents) {
    files_.emplace_back(name, std::move(contents));
  }

  void write(const RunManifest& manifest) const {
    fs::create_directories(dir_);
    std::vector<InputDigest> digests;
    for (const auto& [name, contents] : files_) {
      write_file((fs::path(dir_) / name).string(), contents);
      digests.push_back({name, sha256_hex(contents)});
    }
    write_file((fs::path(dir_) / (command_ + ".manifest.json")).string(),
               dump_json(manifest.document(manifest_timestamp(), digests)));
  }

 private:
  std::string dir_;
  std::string command_;
  std::vector<std::pair<std::string, std::string>> files_;
};

void add_annotation_options(CLI::App* cmd, AnnotationInput& in, const std::string& flag,
                            const std::string& help) {
  cmd->add_option(flag, in.path, help)->required()->check(CLI::ExistingFile);
  cmd->add_option("--schema", in.schema, "Annotation schema (default: from extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--scene-width", in.scene_width, "Orthomosaic width in px (tile bounds)");
  cmd->add_option("--scene-height", in.scene_height, "Orthomosaic height in px (tile bounds)");
}

// ---------------------------------------------------------------------------

struct AreasArgs {
  AnnotationInput annotations;
  std::string taxonomy;
};

void run_areas(const GlobalOptions& g, const AreasArgs& a) {
  RunManifest manifest;
  manifest.command = "areas";
  const auto taxonomy = resolve_taxonomy(a.taxonomy, manifest);
  SurveyConfig defaults;
  const auto doc = load_annotations(a.annotations, g.tile_size.value_or(defaults.tile_size),
                                    manifest);
  const auto config = resolve_config(g, doc.gsd, manifest);
  const auto survey = build_survey(doc.records, taxonomy, config.gsd, g.threads);
  report_rejections(survey);

  OutputSet out(g.out_dir, "areas");
  out.add("areas.csv", areas_csv(survey.instances, taxonomy));
  std::string rejected = "id,reason\n";
  for (const auto& r : survey.rejections) {
    rejected += std::to_string(r.id) + "," + r.reason + "\n";
  }
  out.add("rejections.csv", rejected);
  out.write(manifest);
  std::cout << survey.instances.size() << " instances, " << survey.rejections.size()
            << " rejected\n";
}

// ---------------------------------------------------------------------------

struct NpdArgs {
  AnnotationInput annotations_in;
  std::string areas_path;
  std::string taxonomy;
  std::string zone = "all";
  std::string segment = "macro";
};

void run_npd(const GlobalOptions& g, const NpdArgs& a) {
  RunManifest manifest;
  manifest.command = "npd";
  manifest.options["zone"] = a.zone;
  manifest.options["segment"] = a.segment;

  std::vector<SurveyInstance> instances;
  SurveyConfig config;
  if (!a.areas_path.empty()) {
    const auto text = read_file(a.areas_path);
    manifest.add_input(a.areas_path, text);
    config = resolve_config(g, std::nullopt, manifest);
    instances = parse_areas_csv(text);
  } else {
    const auto taxonomy = resolve_taxonomy(a.taxonomy, manifest);
    SurveyConfig defaults;
    const auto doc = load_annotations(a.annotations_in,
                                      g.tile_size.value_or(defaults.tile_size), manifest);
    config = resolve_config(g, doc.gsd, manifest);
    auto survey = build_survey(doc.records, taxonomy, config.gsd, g.threads);
    report_rejections(survey);
    instances = std::move(survey.instances);
  }

  std::optional<Zone> zone;
  if (a.zone != "all") zone = parse_zone(a.zone);
  const auto areas = survey_areas(instances, zone);
  const auto binning = bin_areas(areas, build_bins(config));
  if (binning.underflow + binning.overflow > 0) {
    warn(std::to_string(binning.underflow) + " areas below and " +
         std::to_string(binning.overflow) + " above the bin range");
  }

  std::vector<Segment> segments;
  if (a.segment == "macro" || a.segment == "both") segments.push_back(Segment::Macro);
  if (a.segment == "meso" || a.segment == "both") segments.push_back(Segment::Meso);
  std::vector<PowerLawFit> fits;
  for (const auto s : segments) {
    fits.push_back(fit_power_law(binning.bins, s, config.macro_meso_threshold));
  }

  const auto run_id = manifest.run_id();
  nlohmann::json report;
  report["run_id"] = run_id;
  report["zone"] = a.zone;
  report["instances"] = areas.size();
  report["macro_meso_threshold"] = config.macro_meso_threshold;
  report["binning"] = bins_json(binning);
  report["fits"] = nlohmann::json::array();
  for (const auto& f : fits) report["fits"].push_back(fit_json(f, a.zone));

  OutputSet out(g.out_dir, "npd");
  out.add("npd.json", dump_json(report));
  out.add("npd.svg", npd_chart_svg(binning.bins, fits, config.macro_meso_threshold,
                                   "NPD size spectrum (" + a.zone + ")", run_id));
  out.write(manifest);
  for (const auto& f : fits) {
    std::cout << to_string(f.segment) << ": alpha = " << format_fixed(f.alpha, 4)
              << ", R^2 = " << format_fixed(f.r_squared, 4) << ", p = " << f.p_value
              << ", bins = " << f.bins_used << '\n';
  }
}

// ---------------------------------------------------------------------------

struct RiskArgs {
  AnnotationInput annotations;
  std::string taxonomy;
  double axis_angle = 90.0;
};

void run_risk(const GlobalOptions& g, const RiskArgs& a) {
  RunManifest manifest;
  manifest.command = "risk";
  manifest.options["axis_angle_deg"] = format_number(a.axis_angle);
  const auto taxonomy = resolve_taxonomy(a.taxonomy, manifest);
  SurveyConfig defaults;
  const auto doc = load_annotations(a.annotations, g.tile_size.value_or(defaults.tile_size),
                                    manifest);
  const auto config = resolve_config(g, doc.gsd, manifest);
  const auto survey = build_survey(doc.records, taxonomy, config.gsd, g.threads);
  report_rejections(survey);
  const auto risk = analyze_risk(survey.instances, taxonomy, config.sector_count, a.axis_angle);

  const auto run_id = manifest.run_id();
  auto centroid = centroid_json(risk.shift);
  centroid["run_id"] = run_id;
  OutputSet out(g.out_dir, "risk");
  out.add("sectors.csv", sectors_csv(risk.sectors));
  out.add("centroid.json", dump_json(centroid));
  out.add("risk.svg", sector_chart_svg(risk.sectors, run_id));
  out.write(manifest);
  std::cout << "centroid shift delta = " << format_number(risk.shift.delta) << " m\n";
}

// ---------------------------------------------------------------------------

struct SourceSinkArgs {
  AnnotationInput annotations;
  std::string taxonomy;
};

void run_sourcesink(const GlobalOptions& g, const SourceSinkArgs& a) {
  RunManifest manifest;
  manifest.command = "sourcesink";
  const auto taxonomy = resolve_taxonomy(a.taxonomy, manifest);
  SurveyConfig defaults;
  const auto doc = load_annotations(a.annotations, g.tile_size.value_or(defaults.tile_size),
                                    manifest);
  const auto config = resolve_config(g, doc.gsd, manifest);
  const auto survey = build_survey(doc.records, taxonomy, config.gsd, g.threads);
  report_rejections(survey);
  const auto groups = compose(survey.instances, taxonomy);

  OutputSet out(g.out_dir, "sourcesink");
  out.add("groups.csv", groups_csv(groups));
  out.add("sourcesink.svg", composition_chart_svg(groups, manifest.run_id()));
  out.write(manifest);
  for (const auto& grp : groups) {
    std::cout << to_string(grp.group) << ": count share " << format_fixed(grp.count_share, 4)
              << ", area share " << format_fixed(grp.area_share, 4);
    if (grp.count > 0) {
      std::cout << ", overrepresentation " << format_fixed(overrepresentation(grp), 3);
    }
    std::cout << '\n';
  }
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  AnnotationInput detections;
  AnnotationInput ground_truth;
  std::string taxonomy;
  double iou = 0.5;
  double confidence_cut = 0.0;
};

void run_eval(const GlobalOptions& g, const EvalArgs& a) {
  RunManifest manifest;
  manifest.command = "eval";
  manifest.options["iou"] = format_number(a.iou);
  manifest.options["confidence_cut"] = format_number(a.confidence_cut);
  const auto taxonomy = resolve_taxonomy(a.taxonomy, manifest);
  SurveyConfig defaults;
  const auto tile = g.tile_size.value_or(defaults.tile_size);
  const auto dets_doc = load_annotations(a.detections, tile, manifest);
  const auto gt_doc = load_annotations(a.ground_truth, tile, manifest);
  resolve_config(g, gt_doc.gsd, manifest);

  const auto gt_valid = validate_instances(gt_doc.records, taxonomy);
  for (const auto& r : gt_valid.rejections) {
    warn("ground truth " + std::to_string(r.id) + " rejected: " + r.reason);
  }
  for (const auto& r : dets_doc.records) {
    if (!r.confidence) warn("detection " + std::to_string(r.id) + " has no confidence; using 1");
  }
  const auto dets = to_eval_instances(dets_doc.records);
  const auto gts = to_eval_instances(gt_valid.accepted);
  const auto report = evaluate(dets, gts, a.iou, a.confidence_cut);

  auto j = eval_json(report);
  j["run_id"] = manifest.run_id();
  OutputSet out(g.out_dir, "eval");
  out.add("eval.json", dump_json(j));
  out.write(manifest);
  std::cout << "mAP50 = " << format_fixed(report.map, 4)
            << ", precision = " << format_fixed(report.at_cut.precision, 4)
            << ", recall = " << format_fixed(report.at_cut.recall, 4) << '\n';
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::int64_t n = 1000;
  double alpha = -2.0;
  double area_min = 6.25e-4;
  double area_max = 10.0;
  std::int64_t width = 16384;
  std::int64_t height = 16384;
  std::string mix = "G76=1";
  double intertidal_fraction = 0.5;
  double dropout = 0.0;
  double jitter = 0.0;
};

std::vector<std::pair<std::string, double>> parse_mix(const std::string& text) {
  std::vector<std::pair<std::string, double>> mix;
  for (auto item : split(text, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find_first_of("=:");
    if (eq == std::string_view::npos) throw Error("mix entries look like G4=0.5");
    mix.emplace_back(GCode(std::string(trim(item.substr(0, eq)))).str(),
                     parse_double(item.substr(eq + 1)));
  }
  return mix;
}

void run_synth(const GlobalOptions& g, const SynthArgs& a) {
  RunManifest manifest;
  manifest.command = "synth";
  const auto config = resolve_config(g, std::nullopt, manifest);

  SynthConfig sc;
  sc.n_instances = a.n;
  sc.alpha_true = a.alpha;
  sc.area_min = a.area_min;
  sc.area_max = a.area_max;
  sc.gsd = config.gsd;
  sc.scene_width = a.width;
  sc.scene_height = a.height;
  sc.category_mix = parse_mix(a.mix);
  sc.intertidal_fraction = a.intertidal_fraction;
  sc.seed = g.seed;
  const auto scene = generate_scene(sc);
  // Detection noise uses its own stream so the ground truth does not depend
  // on the noise flags.
  const auto dets = simulate_detections(scene, {a.dropout, a.jitter, g.seed + 1});

  nlohmann::json mix = nlohmann::json::array();
  for (const auto& [code, p] : sc.category_mix) mix.push_back({code, p});
  manifest.options = {{"n", std::to_string(a.n)},
                      {"alpha", format_number(a.alpha)},
                      {"area_min", format_number(a.area_min)},
                      {"area_max", format_number(a.area_max)},
                      {"width", std::to_string(a.width)},
                      {"height", std::to_string(a.height)},
                      {"mix", mix.dump()},
                      {"intertidal_fraction", format_number(a.intertidal_fraction)},
                      {"dropout", format_number(a.dropout)},
                      {"jitter", format_number(a.jitter)},
                      {"seed", std::to_string(g.seed)}};

  nlohmann::json truth;
  truth["config"] = {{"n_instances", sc.n_instances},  {"alpha_true", sc.alpha_true},
                     {"area_min", sc.area_min},        {"area_max", sc.area_max},
                     {"gsd", sc.gsd},                  {"scene_width", sc.scene_width},
                     {"scene_height", sc.scene_height}, {"category_mix", mix},
                     {"intertidal_fraction", sc.intertidal_fraction},
                     {"seed", sc.seed},                {"rng", kRngAlgorithm},
                     {"dropout", a.dropout},           {"confidence_jitter", a.jitter}};
  truth["alpha_true"] = sc.alpha_true;
  truth["run_id"] = manifest.run_id();
  truth["instances"] = nlohmann::json::array();
  for (const auto& s : scene.instances) {
    truth["instances"].push_back({{"id", s.id},
                                  {"gcode", s.gcode.str()},
                                  {"zone", to_string(s.zone)},
                                  {"true_area_m2", s.true_area_m2},
                                  {"origin_px", {s.origin_x, s.origin_y}},
                                  {"side_px", s.side_px}});
  }

  OutputSet out(g.out_dir, "synth");
  out.add("annotations.json",
          serialize_annotations(scene.records, AnnotationSchema::PolygonJson, sc.gsd));
  out.add("detections.json",
          serialize_annotations(dets, AnnotationSchema::PolygonJson, sc.gsd));
  out.add("synth_manifest.json", dump_json(truth));
  out.write(manifest);
  std::cout << scene.records.size() << " ground-truth instances, " << dets.size()
            << " detections\n";
}

// ---------------------------------------------------------------------------

struct TilesArgs {
  std::int64_t width = 0;
  std::int64_t height = 0;
  AnnotationInput annotations_in;
};

void run_tiles(const GlobalOptions& g, const TilesArgs& a) {
  RunManifest manifest;
  manifest.command = "tiles";
  manifest.options["width"] = std::to_string(a.width);
  manifest.options["height"] = std::to_string(a.height);
  const auto config = resolve_config(g, std::nullopt, manifest);
  const TileGrid grid(a.width, a.height, config.tile_size);

  std::string csv = "row,col,origin_x,origin_y,width,height\n";
  for (const auto& t : grid.tiles()) {
    csv += std::to_string(t.index.row) + "," + std::to_string(t.index.col) + "," +
           std::to_string(t.origin_x) + "," + std::to_string(t.origin_y) + "," +
           std::to_string(t.width) + "," + std::to_string(t.height) + "\n";
  }
  OutputSet out(g.out_dir, "tiles");
  out.add("tiles.csv", csv);
  if (!a.annotations_in.path.empty()) {
    const auto text = read_file(a.annotations_in.path);
    manifest.add_input(a.annotations_in.path, text);
    auto doc = parse_annotations(text, resolve_schema(a.annotations_in));
    for (auto& r : doc.records) r = to_global(std::move(r), grid);
    out.add("global_annotations.json",
            serialize_annotations(doc.records, AnnotationSchema::PolygonJson, doc.gsd));
  }
  out.write(manifest);
  std::cout << grid.tile_count() << " tiles (" << grid.rows() << " x " << grid.cols() << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physical metrics from beach-litter instance segmentations"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--gsd", g.gsd, "Ground sampling distance (m/px), default 0.0017")
      ->check(CLI::PositiveNumber);
  app.add_option("--config", g.config_path, "Flat key=value survey configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--out-dir", g.out_dir, "Directory for reports")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads for per-instance geometry")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tile-size", g.tile_size, "Tile size in px, default 512");
  app.add_option("--bin-min", g.bin_min, "Smallest bin edge (m^2), default 1e-4");
  app.add_option("--bin-max", g.bin_max, "Largest bin edge (m^2), default 10");
  app.add_option("--bin-count", g.bin_count, "Number of geometric bins, default 14");
  app.add_option("--threshold", g.threshold, "Macro/meso boundary (m^2), default 6.25e-4");
  app.add_option("--sectors", g.sectors, "Alongshore sector count, default 10");

  AreasArgs areas;
  auto* areas_cmd = app.add_subcommand("areas", "Per-instance pixel counts, areas and centroids");
  add_annotation_options(areas_cmd, areas.annotations, "--annotations", "Annotation file");
  areas_cmd->add_option("--taxonomy", areas.taxonomy, "Taxonomy CSV (default: bundled)");

  NpdArgs npd;
  auto* npd_cmd = app.add_subcommand("npd", "Size spectrum and power-law fits");
  auto* npd_ann = npd_cmd->add_option("--annotations", npd.annotations_in.path, "Annotation file")
                      ->check(CLI::ExistingFile);
  auto* npd_areas = npd_cmd->add_option("--areas", npd.areas_path, "areas.csv from `areas`")
                        ->check(CLI::ExistingFile);
  npd_ann->excludes(npd_areas);
  npd_cmd->add_option("--schema", npd.annotations_in.schema)->check(CLI::IsMember({"json", "csv"}));
  npd_cmd->add_option("--taxonomy", npd.taxonomy, "Taxonomy CSV (default: bundled)");
  npd_cmd->add_option("--zone", npd.zone, "all, intertidal or backshore")
      ->check(CLI::IsMember({"all", "intertidal", "backshore"}))
      ->capture_default_str();
  npd_cmd->add_option("--segment", npd.segment, "macro, meso or both")
      ->check(CLI::IsMember({"macro", "meso", "both"}))
      ->capture_default_str();

  RiskArgs risk;
  auto* risk_cmd = app.add_subcommand("risk", "Sector CCI/ERI and centroid shift");
  add_annotation_options(risk_cmd, risk.annotations, "--annotations", "Annotation file");
  risk_cmd->add_option("--taxonomy", risk.taxonomy, "Taxonomy CSV (default: bundled)");
  risk_cmd->add_option("--axis-angle", risk.axis_angle,
                       "Alongshore axis angle from +x in degrees (90 = y axis)")
      ->capture_default_str();

  SourceSinkArgs ss;
  auto* ss_cmd = app.add_subcommand("sourcesink", "Count vs area share per source group");
  add_annotation_options(ss_cmd, ss.annotations, "--annotations", "Annotation file");
  ss_cmd->add_option("--taxonomy", ss.taxonomy, "Taxonomy CSV (default: bundled)");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Mask-level precision, recall and mAP50");
  eval_cmd->add_option("--detections", ev.detections.path, "Detection file")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--ground-truth", ev.ground_truth.path, "Ground-truth file")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--taxonomy", ev.taxonomy, "Taxonomy CSV (default: bundled)");
  eval_cmd->add_option("--iou", ev.iou, "IoU threshold")->capture_default_str();
  eval_cmd->add_option("--confidence-cut", ev.confidence_cut,
                       "Minimum confidence for precision/recall")
      ->capture_default_str();

  SynthArgs sy;
  auto* synth_cmd = app.add_subcommand("synth", "Synthetic survey with known ground truth");
  synth_cmd->add_option("--n", sy.n, "Number of instances")->capture_default_str();
  synth_cmd->add_option("--alpha", sy.alpha, "Power-law exponent")->capture_default_str();
  synth_cmd->add_option("--area-min", sy.area_min, "Smallest area (m^2)")->capture_default_str();
  synth_cmd->add_option("--area-max", sy.area_max, "Largest area (m^2)")->capture_default_str();
  synth_cmd->add_option("--width", sy.width, "Scene width (px)")->capture_default_str();
  synth_cmd->add_option("--height", sy.height, "Scene height (px)")->capture_default_str();
  synth_cmd->add_option("--mix", sy.mix, "Category mix, e.g. G4=0.3,G76=0.7")
      ->capture_default_str();
  synth_cmd->add_option("--intertidal-fraction", sy.intertidal_fraction)->capture_default_str();
  synth_cmd->add_option("--dropout", sy.dropout, "Detection dropout probability")
      ->capture_default_str();
  synth_cmd->add_option("--jitter", sy.jitter, "Confidence jitter amplitude")
      ->capture_default_str();

  TilesArgs tl;
  auto* tiles_cmd = app.add_subcommand("tiles", "Tile grid and tile-to-global conversion");
  tiles_cmd->add_option("--width", tl.width, "Orthomosaic width (px)")->required();
  tiles_cmd->add_option("--height", tl.height, "Orthomosaic height (px)")->required();
  tiles_cmd->add_option("--annotations", tl.annotations_in.path,
                        "Tile-local annotations to convert")
      ->check(CLI::ExistingFile);
  tiles_cmd->add_option("--schema", tl.annotations_in.schema)
      ->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*areas_cmd) {
      run_areas(g, areas);
    } else if (*npd_cmd) {
      if (npd.annotations_in.path.empty() && npd.areas_path.empty()) {
        throw Error("npd needs --annotations or --areas");
      }
      run_npd(g, npd);
    } else if (*risk_cmd) {
      run_risk(g, risk);
    } else if (*ss_cmd) {
      run_sourcesink(g, ss);
    } else if (*eval_cmd) {
      run_eval(g, ev);
    } else if (*synth_cmd) {
      run_synth(g, sy);
    } else if (*tiles_cmd) {
      run_tiles(g, tl);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

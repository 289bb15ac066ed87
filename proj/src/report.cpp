#include "litterscope/report.hpp"

#include "litterscope/csv.hpp"
#include "litterscope/error.hpp"
#include "litterscope/text.hpp"

namespace litterscope {

using nlohmann::json;

std::string areas_csv(std::span<const SurveyInstance> instances, const Taxonomy& taxonomy) {
  std::string out = "id,gcode,group,zone,pixels,area_m2,centroid_x_m,centroid_y_m\n";
  for (const auto& inst : instances) {
    out += csv_join({std::to_string(inst.id), inst.gcode.str(),
                     std::string(to_string(taxonomy.at(inst.gcode).group)),
                     inst.zone ? std::string(to_string(*inst.zone)) : "",
                     std::to_string(inst.pixels), format_number(inst.area_m2),
                     format_number(inst.x_m), format_number(inst.y_m)});
    out += '\n';
  }
  return out;
}

std::vector<SurveyInstance> parse_areas_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw ParseError("missing header", 1);
  const auto& header = rows.front().cells;
  const auto column = [&](std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw ParseError("areas CSV lacks column '" + std::string(name) + "'", rows.front().line);
  };
  const auto id = column("id");
  const auto gcode = column("gcode");
  const auto zone = column("zone");
  const auto pixels = column("pixels");
  const auto area = column("area_m2");
  const auto cx = column("centroid_x_m");
  const auto cy = column("centroid_y_m");

  std::vector<SurveyInstance> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r].cells;
    if (cells.size() != header.size()) throw ParseError("wrong cell count", rows[r].line);
    try {
      SurveyInstance inst;
      inst.id = parse_integer(cells[id]);
      inst.gcode = GCode(cells[gcode]);
      if (!trim(cells[zone]).empty()) {
        inst.zone = parse_zone(cells[zone]);
        if (!inst.zone) throw Error("unknown zone '" + cells[zone] + "'");
      }
      inst.pixels = parse_integer(cells[pixels]);
      inst.area_m2 = parse_double(cells[area]);
      inst.x_m = parse_double(cells[cx]);
      inst.y_m = parse_double(cells[cy]);
      out.push_back(std::move(inst));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), rows[r].line);
    }
  }
  return out;
}

json fit_json(const PowerLawFit& fit, std::string_view zone) {
  return {{"segment", to_string(fit.segment)}, {"zone", zone},
          {"alpha", fit.alpha},                {"log10_c", fit.log10_c},
          {"r_squared", fit.r_squared},        {"p_value", fit.p_value},
          {"bins_used", fit.bins_used}};
}

json bins_json(const Binning& binning) {
  json bins = json::array();
  for (const auto& b : binning.bins) {
    bins.push_back({{"low", b.low}, {"high", b.high}, {"center", b.center},
                    {"count", b.count}, {"npd", b.npd}});
  }
  return {{"bins", bins}, {"underflow", binning.underflow}, {"overflow", binning.overflow}};
}

std::string sectors_csv(std::span<const SectorMetrics> sectors) {
  std::string out = "sector,lower_m,upper_m,length_m,count,cci,eri,cci_norm,eri_norm\n";
  for (const auto& s : sectors) {
    out += csv_join({"S" + std::to_string(s.sector.index), format_number(s.sector.lower),
                     format_number(s.sector.upper), format_number(s.sector.length()),
                     std::to_string(s.count), format_number(s.cci), format_number(s.eri),
                     format_number(s.cci_norm), format_number(s.eri_norm)});
    out += '\n';
  }
  return out;
}

json centroid_json(const CentroidShift& shift) {
  return {{"c_count", {shift.c_count.x, shift.c_count.y}},
          {"c_eri", {shift.c_eri.x, shift.c_eri.y}},
          {"delta_m", shift.delta}};
}

std::string groups_csv(std::span<const GroupComposition> groups) {
  std::string out = "group,count,count_share,total_area_m2,area_share,mean_item_area_m2\n";
  for (const auto& g : groups) {
    out += csv_join({std::string(to_string(g.group)), std::to_string(g.count),
                     format_number(g.count_share), format_number(g.total_area_m2),
                     format_number(g.area_share), format_number(g.mean_item_area_m2)});
    out += '\n';
  }
  return out;
}

json eval_json(const EvalReport& report) {
  json per_category = json::array();
  for (const auto& ap : report.per_category) {
    per_category.push_back({{"gcode", ap.gcode.str()}, {"ap", ap.ap}, {"gt_count", ap.gt_count},
                            {"tp", ap.tp}, {"fp", ap.fp}, {"fn", ap.fn}});
  }
  json flags = json::array();
  if (report.at_cut.precision_undefined) flags.push_back("precision_undefined");
  if (report.at_cut.recall_undefined) flags.push_back("recall_undefined");
  return {{"per_category", per_category},
          {"map50", report.map},
          {"iou_threshold", report.iou_threshold},
          {"confidence_cut", report.confidence_cut},
          {"precision", report.at_cut.precision},
          {"recall", report.at_cut.recall},
          {"tp", report.matches.tp()},
          {"fp", report.matches.fp()},
          {"fn", report.matches.fn()},
          {"flags", flags},
          {"best_f1",
           {{"confidence", report.best_f1.confidence},
            {"precision", report.best_f1.precision},
            {"recall", report.best_f1.recall},
            {"f1", report.best_f1.f1}}}};
}

std::string dump_json(const json& value) { return value.dump(2) + "\n"; }

}  // namespace litterscope

#include "litterscope/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "litterscope/csv.hpp"
#include "litterscope/error.hpp"
#include "litterscope/geometry.hpp"
#include "litterscope/text.hpp"

namespace litterscope {

namespace {

std::optional<int> gcode_number(std::string_view code) {
  code = trim(code);
  if (code.size() < 2 || (code[0] != 'G' && code[0] != 'g')) return std::nullopt;
  const std::string_view digits = code.substr(1);
  if (!std::all_of(digits.begin(), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

constexpr std::string_view kBundledTaxonomy =
    "gcode,description,group,weight\n"
    "G4,Plastic bags (carrier/bin-liner),Domestic,8\n"
    "G6,Plastic drink bottles (<=0.5 L),Domestic,2\n"
    "G7,Plastic drink bottles (>0.5 L),Domestic,2\n"
    "G18,Plastic crates/boxes (fishing-related),Fishing,7\n"
    "G21,Plastic caps and lids,Domestic,5\n"
    "G65,Plastic barrels/drums (fishing-related),Fishing,7\n"
    "G76,Plastic fragments 2.5-50 cm,Fragments,3\n"
    "G77,Plastic/polystyrene fragments >50 cm,Fragments,3\n"
    "G137,Clothing and fabric pieces,Domestic,2\n"
    "G138,Shoes and footwear,Domestic,2\n"
    "G151,Paper bags,Domestic,1\n"
    "G158,Other paper items,Domestic,1\n"
    "G173,Other wooden items,Domestic,1\n";

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

struct ShapeDraft {
  std::optional<std::int64_t> id;
  std::size_t line = 0;
  InstanceRecord record;
};

bool finite_polygon(const Polygon& polygon) {
  return std::all_of(polygon.begin(), polygon.end(), [](const Point& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
  });
}

// Shape-level checks shared by both schemas. Returns an error message or "".
std::string check_shape(const InstanceRecord& r) {
  if (r.polygon.size() < 3) {
    return "polygon has " + std::to_string(r.polygon.size()) +
           " vertices, need at least 3";
  }
  if (!finite_polygon(r.polygon)) return "non-finite vertex coordinate";
  if (r.confidence && !(*r.confidence >= 0.0 && *r.confidence <= 1.0)) {
    return "confidence outside [0, 1]";
  }
  return {};
}

AnnotationDocument finish(std::vector<ShapeDraft> drafts,
                          std::vector<RecordIssue> issues,
                          std::optional<double> gsd) {
  std::set<std::int64_t> seen;
  std::int64_t max_id = 0;
  for (const auto& d : drafts) {
    if (!d.id) continue;
    if (!seen.insert(*d.id).second) {
      throw ParseError("duplicate shape id " + std::to_string(*d.id), d.line);
    }
    max_id = std::max(max_id, *d.id);
  }
  AnnotationDocument doc;
  doc.gsd = gsd;
  doc.issues = std::move(issues);
  doc.records.reserve(drafts.size());
  for (auto& d : drafts) {
    d.record.id = d.id ? *d.id : ++max_id;
    doc.records.push_back(std::move(d.record));
  }
  return doc;
}

AnnotationDocument parse_polygon_json(std::string_view text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("invalid JSON", line, column);
  }
  if (!root.is_object()) throw ParseError("top level must be an object", 1, 1);

  std::optional<double> gsd;
  if (auto it = root.find("gsd_m_per_px"); it != root.end()) {
    if (!it->is_number() || !(it->get<double>() > 0.0)) {
      throw ParseError("gsd_m_per_px must be a positive number", 0);
    }
    gsd = it->get<double>();
  }
  const auto shapes = root.find("shapes");
  if (shapes == root.end() || !shapes->is_array()) {
    throw ParseError("missing \"shapes\" array", 0);
  }

  std::vector<ShapeDraft> drafts;
  std::vector<RecordIssue> issues;
  for (std::size_t index = 0; index < shapes->size(); ++index) {
    const auto& shape = (*shapes)[index];
    const auto fail = [&](std::string message) {
      issues.push_back({index, 0, std::move(message)});
    };
    if (!shape.is_object()) {
      fail("shape is not an object");
      continue;
    }
    ShapeDraft draft;
    if (auto it = shape.find("id"); it != shape.end() && !it->is_null()) {
      if (!it->is_number_integer()) {
        fail("id is not an integer");
        continue;
      }
      draft.id = it->get<std::int64_t>();
    }
    const auto label = shape.find("label");
    if (label == shape.end() || !label->is_string()) {
      fail("missing label");
      continue;
    }
    auto code = GCode::parse(label->get<std::string>());
    if (!code) {
      fail("label '" + label->get<std::string>() + "' is not a G-code");
      continue;
    }
    draft.record.gcode = *code;

    const auto points = shape.find("points");
    if (points == shape.end() || !points->is_array()) {
      fail("missing points array");
      continue;
    }
    bool bad_point = false;
    for (const auto& p : *points) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        bad_point = true;
        break;
      }
      draft.record.polygon.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    if (bad_point) {
      fail("points must be [x, y] number pairs");
      continue;
    }
    if (auto it = shape.find("confidence"); it != shape.end() && !it->is_null()) {
      if (!it->is_number()) {
        fail("confidence is not a number");
        continue;
      }
      draft.record.confidence = it->get<double>();
    }
    if (auto it = shape.find("zone"); it != shape.end() && !it->is_null()) {
      std::optional<Zone> zone;
      if (it->is_string()) zone = parse_zone(it->get<std::string>());
      if (!zone) {
        fail("zone must be \"intertidal\" or \"backshore\"");
        continue;
      }
      draft.record.zone = zone;
    }
    if (auto it = shape.find("tile"); it != shape.end() && !it->is_null()) {
      if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() ||
          !(*it)[1].is_number_integer() || (*it)[0].get<std::int64_t>() < 0 ||
          (*it)[1].get<std::int64_t>() < 0) {
        fail("tile must be [row, col] with non-negative integers");
        continue;
      }
      draft.record.tile = TileIndex{(*it)[0].get<std::int64_t>(),
                                    (*it)[1].get<std::int64_t>()};
    }
    if (auto message = check_shape(draft.record); !message.empty()) {
      fail(std::move(message));
      continue;
    }
    drafts.push_back(std::move(draft));
  }
  return finish(std::move(drafts), std::move(issues), gsd);
}

Polygon parse_points_cell(std::string_view cell) {
  Polygon polygon;
  cell = trim(cell);
  if (cell.empty()) return polygon;
  for (std::string_view pair : split(cell, ';')) {
    pair = trim(pair);
    if (pair.empty()) continue;
    const auto parts = split(pair, ',');
    if (parts.size() != 2) throw Error("bad vertex '" + std::string(pair) + "'");
    polygon.push_back({parse_double(parts[0]), parse_double(parts[1])});
  }
  return polygon;
}

AnnotationDocument parse_flat_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw ParseError("missing header", 1);

  const auto& header = rows.front().cells;
  const auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (to_lower(trim(header[i])) == name) return i;
    }
    return std::nullopt;
  };
  const auto id_col = column("id");
  const auto gcode_col = column("gcode");
  const auto zone_col = column("zone");
  const auto conf_col = column("confidence");
  const auto points_col = column("points");
  if (!gcode_col || !points_col) {
    throw ParseError("header must contain gcode and points columns", rows.front().line);
  }
  const bool points_last = *points_col + 1 == header.size();

  std::vector<ShapeDraft> drafts;
  std::vector<RecordIssue> issues;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::vector<std::string> cells = rows[r].cells;
    const std::size_t index = r - 1;
    const std::size_t line = rows[r].line;
    // Unquoted points cells split on their inner commas; glue them back.
    if (cells.size() > header.size() && points_last) {
      std::string joined = cells[*points_col];
      for (std::size_t i = *points_col + 1; i < cells.size(); ++i) {
        joined += "," + cells[i];
      }
      cells.resize(header.size());
      cells[*points_col] = std::move(joined);
    }
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " cells, got " +
                           std::to_string(cells.size()),
                       line);
    }
    ShapeDraft draft;
    draft.line = line;
    try {
      if (id_col && !trim(cells[*id_col]).empty()) {
        draft.id = parse_integer(cells[*id_col]);
      }
      const auto code = GCode::parse(cells[*gcode_col]);
      if (!code) throw ParseError("'" + cells[*gcode_col] + "' is not a G-code", line);
      draft.record.gcode = *code;
      if (zone_col && !trim(cells[*zone_col]).empty()) {
        draft.record.zone = parse_zone(cells[*zone_col]);
        if (!draft.record.zone) throw ParseError("unknown zone '" + cells[*zone_col] + "'", line);
      }
      if (conf_col && !trim(cells[*conf_col]).empty()) {
        draft.record.confidence = parse_double(cells[*conf_col]);
      }
      draft.record.polygon = parse_points_cell(cells[*points_col]);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line);
    }
    if (auto message = check_shape(draft.record); !message.empty()) {
      issues.push_back({index, line, std::move(message)});
      continue;
    }
    drafts.push_back(std::move(draft));
  }
  return finish(std::move(drafts), std::move(issues), std::nullopt);
}

std::string points_cell(const Polygon& polygon) {
  std::string out;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    if (i) out.push_back(';');
    out += format_number(polygon[i].x) + "," + format_number(polygon[i].y);
  }
  return out;
}

}  // namespace

GCode::GCode(int number) : code_("G" + std::to_string(number)), number_(number) {}

GCode::GCode(std::string code) {
  const auto number = gcode_number(code);
  if (!number) throw Error("'" + code + "' is not a G-code");
  *this = GCode(*number);
}

std::optional<GCode> GCode::parse(std::string_view code) {
  const auto number = gcode_number(code);
  if (!number) return std::nullopt;
  return GCode(*number);
}

std::string_view to_string(SourceGroup group) {
  switch (group) {
    case SourceGroup::Domestic: return "Domestic";
    case SourceGroup::Fishing: return "Fishing";
    case SourceGroup::Fragments: return "Fragments";
  }
  return "?";
}

std::string_view to_string(Zone zone) {
  return zone == Zone::Intertidal ? "intertidal" : "backshore";
}

std::optional<SourceGroup> parse_source_group(std::string_view name) {
  const std::string n = to_lower(trim(name));
  if (n == "domestic" || n == "domestic items") return SourceGroup::Domestic;
  if (n == "fishing" || n == "fishing gear") return SourceGroup::Fishing;
  if (n == "fragments") return SourceGroup::Fragments;
  return std::nullopt;
}

std::optional<Zone> parse_zone(std::string_view name) {
  const std::string n = to_lower(trim(name));
  if (n == "intertidal") return Zone::Intertidal;
  if (n == "backshore") return Zone::Backshore;
  return std::nullopt;
}

Taxonomy::Taxonomy(std::vector<TaxonomyEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.hazard_weight < 1 || e.hazard_weight > 10) {
      throw Error("hazard weight for " + e.gcode.str() + " outside [1, 10]");
    }
    if (!index_.emplace(e.gcode.str(), i).second) {
      throw Error("duplicate taxonomy code " + e.gcode.str());
    }
  }
}

const Taxonomy& Taxonomy::bundled() {
  static const Taxonomy taxonomy = load_taxonomy(kBundledTaxonomy);
  return taxonomy;
}

const TaxonomyEntry* Taxonomy::find(const GCode& code) const {
  const auto it = index_.find(code.str());
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const TaxonomyEntry& Taxonomy::at(const GCode& code) const {
  if (const auto* entry = find(code)) return *entry;
  throw Error("category " + code.str() + " is not in the taxonomy");
}

std::string_view bundled_taxonomy_csv() { return kBundledTaxonomy; }

Taxonomy load_taxonomy(std::string_view table) {
  const auto rows = parse_csv(table);
  if (rows.empty()) throw ParseError("empty taxonomy table", 1);
  const auto& header = rows.front().cells;
  if (header.size() != 4 || to_lower(trim(header[0])) != "gcode" ||
      to_lower(trim(header[1])) != "description" ||
      to_lower(trim(header[2])) != "group" || to_lower(trim(header[3])) != "weight") {
    throw ParseError("header must be gcode,description,group,weight", rows.front().line);
  }
  std::vector<TaxonomyEntry> entries;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r].cells;
    const std::size_t line = rows[r].line;
    if (cells.size() != 4) throw ParseError("expected 4 cells", line);
    const auto code = GCode::parse(cells[0]);
    if (!code) throw ParseError("'" + cells[0] + "' is not a G-code", line);
    const auto group = parse_source_group(cells[2]);
    if (!group) throw ParseError("unknown group '" + cells[2] + "'", line);
    long long weight = 0;
    try {
      weight = parse_integer(cells[3]);
    } catch (const Error&) {
      throw ParseError("weight '" + cells[3] + "' is not an integer", line);
    }
    if (weight < 1 || weight > 10) {
      throw ParseError("weight " + std::to_string(weight) + " outside [1, 10]", line);
    }
    if (!seen.insert(code->str()).second) {
      throw ParseError("duplicate code " + code->str(), line);
    }
    entries.push_back({*code, std::string(trim(cells[1])), *group,
                       static_cast<int>(weight)});
  }
  return Taxonomy(std::move(entries));
}

WeightBand rank_to_weight(double rank) {
  if (!(rank >= 1.0 && rank <= 20.0)) {
    throw Error("rank must lie in [1, 20]");
  }
  // Brackets are defined on integer ranks; composite ranks such as 16.3
  // round to the nearest one first.
  const auto r = static_cast<int>(std::floor(rank + 0.5));
  if (r <= 4) return {9, 10};
  if (r <= 8) return {7, 8};
  if (r <= 12) return {5, 6};
  if (r <= 16) return {3, 4};
  return {1, 2};
}

AnnotationDocument parse_annotations(std::string_view document,
                                     AnnotationSchema schema) {
  return schema == AnnotationSchema::PolygonJson ? parse_polygon_json(document)
                                                 : parse_flat_csv(document);
}

AnnotationSchema schema_for_path(std::string_view path) {
  const auto dot = path.rfind('.');
  if (dot != std::string_view::npos && to_lower(path.substr(dot)) == ".csv") {
    return AnnotationSchema::FlatCsv;
  }
  return AnnotationSchema::PolygonJson;
}

std::string serialize_annotations(std::span<const InstanceRecord> records,
                                  AnnotationSchema schema, std::optional<double> gsd) {
  if (schema == AnnotationSchema::FlatCsv) {
    std::string out = "id,gcode,zone,confidence,points\n";
    for (const auto& r : records) {
      out += csv_join({std::to_string(r.id), r.gcode.str(),
                       r.zone ? std::string(to_string(*r.zone)) : "",
                       r.confidence ? format_number(*r.confidence) : "",
                       points_cell(r.polygon)});
      out += '\n';
    }
    return out;
  }
  // Hand-written so numbers use the same shortest form as the CSV writer and
  // each shape stays on one line.
  std::ostringstream out;
  out << "{\n";
  if (gsd) out << "  \"gsd_m_per_px\": " << format_number(*gsd) << ",\n";
  out << "  \"shapes\": [";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out << (i ? ",\n    " : "\n    ") << "{\"id\": " << r.id << ", \"label\": \""
        << r.gcode.str() << "\", \"points\": [";
    for (std::size_t k = 0; k < r.polygon.size(); ++k) {
      out << (k ? ", " : "") << '[' << format_number(r.polygon[k].x) << ", "
          << format_number(r.polygon[k].y) << ']';
    }
    out << ']';
    if (r.confidence) out << ", \"confidence\": " << format_number(*r.confidence);
    if (r.zone) out << ", \"zone\": \"" << to_string(*r.zone) << '"';
    if (r.tile) out << ", \"tile\": [" << r.tile->row << ", " << r.tile->col << ']';
    out << '}';
  }
  out << (records.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

ValidationResult validate_instances(std::span<const InstanceRecord> records,
                                    const Taxonomy& taxonomy) {
  ValidationResult result;
  for (const auto& r : records) {
    if (!taxonomy.contains(r.gcode)) {
      result.rejections.push_back({r.id, std::string(kReasonUnknownCategory)});
      continue;
    }
    if (r.polygon.size() < 3) {
      result.rejections.push_back({r.id, std::string(kReasonTooFewVertices)});
      continue;
    }
    const auto box = bounding_box(r.polygon);
    const double long_side = std::max(box.width(), box.height());
    const double short_side = std::min(box.width(), box.height());
    if (long_side < 3.0 || short_side < 2.0) {
      result.rejections.push_back({r.id, std::string(kReasonSubMinimum)});
      continue;
    }
    result.accepted.push_back(r);
  }
  return result;
}

}  // namespace litterscope

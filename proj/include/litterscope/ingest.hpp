#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace litterscope {

/// EU marine-litter category identifier: 'G' followed by a decimal integer.
class GCode {
 public:
  /// Throws Error when `code` is not of the form G<digits>.
  explicit GCode(std::string code);

  static std::optional<GCode> parse(std::string_view code);

  const std::string& str() const noexcept { return code_; }
  int number() const noexcept { return number_; }

  // Numeric order: G4 < G18 < G137.
  auto operator<=>(const GCode& other) const { return number_ <=> other.number_; }
  bool operator==(const GCode& other) const { return number_ == other.number_; }

 private:
  GCode(int number);
  std::string code_;
  int number_ = 0;
};

enum class SourceGroup { Domestic, Fishing, Fragments };
enum class Zone { Intertidal, Backshore };

inline constexpr SourceGroup kSourceGroups[] = {
    SourceGroup::Domestic, SourceGroup::Fishing, SourceGroup::Fragments};

std::string_view to_string(SourceGroup group);
std::string_view to_string(Zone zone);
std::optional<SourceGroup> parse_source_group(std::string_view name);
std::optional<Zone> parse_zone(std::string_view name);

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

using Polygon = std::vector<Point>;

struct TileIndex {
  std::int64_t row = 0;
  std::int64_t col = 0;
  bool operator==(const TileIndex&) const = default;
};

/// One segmented litter object. Coordinates are pixels, tile-local when
/// `tile` is set and global otherwise.
struct InstanceRecord {
  std::int64_t id = 0;
  GCode gcode{"G0"};
  Polygon polygon;
  std::optional<double> confidence;  // detections only
  std::optional<Zone> zone;
  std::optional<TileIndex> tile;

  bool operator==(const InstanceRecord&) const = default;
};

struct TaxonomyEntry {
  GCode gcode;
  std::string description;
  SourceGroup group;
  int hazard_weight;  // w_k, 1..10
};

class Taxonomy {
 public:
  Taxonomy() = default;
  /// Throws Error on duplicate codes or weights outside [1, 10].
  explicit Taxonomy(std::vector<TaxonomyEntry> entries);

  /// The 13-row hazard-weight table shipped with the library.
  static const Taxonomy& bundled();

  const TaxonomyEntry* find(const GCode& code) const;
  /// Throws Error naming the code when absent.
  const TaxonomyEntry& at(const GCode& code) const;
  bool contains(const GCode& code) const { return find(code) != nullptr; }

  std::span<const TaxonomyEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<TaxonomyEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

/// CSV with header `gcode,description,group,weight`. Any invalid row is
/// fatal (ParseError with the offending line).
Taxonomy load_taxonomy(std::string_view table);

/// Text of the bundled taxonomy, in the same CSV format.
std::string_view bundled_taxonomy_csv();

/// Inclusive hazard-weight band for an expert-elicited threat rank.
struct WeightBand {
  int low;
  int high;
  bool operator==(const WeightBand&) const = default;
};

/// Integer brackets 1-4 -> 9..10, 5-8 -> 7..8, 9-12 -> 5..6, 13-16 -> 3..4,
/// 17-20 -> 1..2, applied to the rank rounded to the nearest integer
/// (halves round up). Throws Error outside [1, 20].
WeightBand rank_to_weight(double rank);

enum class AnnotationSchema { PolygonJson, FlatCsv };

/// Shape-level problem that dropped one shape without aborting the parse.
struct RecordIssue {
  std::size_t index = 0;  // 0-based shape/row position in the document
  std::size_t line = 0;   // CSV line; 0 for JSON
  std::string message;
};

struct AnnotationDocument {
  std::vector<InstanceRecord> records;
  std::vector<RecordIssue> issues;
  std::optional<double> gsd;  // gsd_m_per_px, JSON only
};

/// Parses a labeler export. Shapes without an explicit id get ids after the
/// largest explicit one, in document order. Throws ParseError on malformed
/// documents and on duplicate explicit ids.
AnnotationDocument parse_annotations(std::string_view document,
                                     AnnotationSchema schema);

/// Picks the schema from a file name (.csv -> FlatCsv, else PolygonJson).
AnnotationSchema schema_for_path(std::string_view path);

std::string serialize_annotations(std::span<const InstanceRecord> records,
                                  AnnotationSchema schema,
                                  std::optional<double> gsd = std::nullopt);

struct Rejection {
  std::int64_t id;
  std::string reason;
};

struct ValidationResult {
  std::vector<InstanceRecord> accepted;
  std::vector<Rejection> rejections;
};

inline constexpr std::string_view kReasonUnknownCategory = "unknown category";
inline constexpr std::string_view kReasonTooFewVertices = "too few vertices";
inline constexpr std::string_view kReasonSubMinimum = "sub-minimum";

/// Applies the annotation protocol: known category, >= 3 vertices, and a
/// bounding box whose long side is >= 3 px and short side >= 2 px.
ValidationResult validate_instances(std::span<const InstanceRecord> records,
                                    const Taxonomy& taxonomy);

}  // namespace litterscope

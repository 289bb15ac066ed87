#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace litterscope {

std::string svg_escape(std::string_view text);

/// Minimal SVG builder. Coordinates are written with 2 decimals so output
/// is byte-stable across platforms.
class SvgDocument {
 public:
  SvgDocument(double width, double height);

  void metadata(std::string_view key, std::string_view value);
  void rect(double x, double y, double w, double h, std::string_view fill,
            std::string_view extra = {});
  void line(double x1, double y1, double x2, double y2, std::string_view stroke,
            double stroke_width = 1.0, std::string_view extra = {});
  void circle(double cx, double cy, double r, std::string_view fill);
  void text(double x, double y, std::string_view content, double size = 12.0,
            std::string_view anchor = "start", std::string_view extra = {});

  std::string str() const;

 private:
  double width_;
  double height_;
  std::vector<std::pair<std::string, std::string>> metadata_;
  std::ostringstream body_;
};

}  // namespace litterscope

#include "litterscope/svg.hpp"

#include "litterscope/text.hpp"

namespace litterscope {

namespace {

std::string num(double v) { return format_fixed(v, 2); }

}  // namespace

std::string svg_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

SvgDocument::SvgDocument(double width, double height) : width_(width), height_(height) {}

void SvgDocument::metadata(std::string_view key, std::string_view value) {
  metadata_.emplace_back(std::string(key), std::string(value));
}

void SvgDocument::rect(double x, double y, double w, double h, std::string_view fill,
                       std::string_view extra) {
  body_ << "  <rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
        << "\" height=\"" << num(h) << "\" fill=\"" << fill << '"';
  if (!extra.empty()) body_ << ' ' << extra;
  body_ << "/>\n";
}

void SvgDocument::line(double x1, double y1, double x2, double y2, std::string_view stroke,
                       double stroke_width, std::string_view extra) {
  body_ << "  <line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
        << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
        << num(stroke_width) << '"';
  if (!extra.empty()) body_ << ' ' << extra;
  body_ << "/>\n";
}

void SvgDocument::circle(double cx, double cy, double r, std::string_view fill) {
  body_ << "  <circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
        << "\" fill=\"" << fill << "\"/>\n";
}

void SvgDocument::text(double x, double y, std::string_view content, double size,
                       std::string_view anchor, std::string_view extra) {
  body_ << "  <text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\""
        << num(size) << "\" text-anchor=\"" << anchor << '"';
  if (!extra.empty()) body_ << ' ' << extra;
  body_ << '>' << svg_escape(content) << "</text>\n";
}

std::string SvgDocument::str() const {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
      << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_) << ' '
      << num(height_) << "\" font-family=\"sans-serif\">\n";
  if (!metadata_.empty()) {
    out << "  <metadata>";
    for (const auto& [k, v] : metadata_) {
      out << svg_escape(k) << '=' << svg_escape(v) << ';';
    }
    out << "</metadata>\n";
  }
  out << "  <rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_)
      << "\" fill=\"white\"/>\n";
  out << body_.str() << "</svg>\n";
  return out.str();
}

}  // namespace litterscope

#include "litterscope/charts.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "litterscope/svg.hpp"
#include "litterscope/text.hpp"

namespace litterscope {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::string_view kMacroColor = "#1f77b4";
constexpr std::string_view kMesoColor = "#ff7f0e";
constexpr std::string_view kOtherColor = "#999999";

struct Axis {
  double lo;
  double hi;
  double px_lo;
  double px_hi;
  double map(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

std::string decade_label(int exponent) { return "1e" + std::to_string(exponent); }

void frame(SvgDocument& svg, double plot_w, double plot_h) {
  svg.line(kLeft, kTop + plot_h, kLeft + plot_w, kTop + plot_h, "black");
  svg.line(kLeft, kTop, kLeft, kTop + plot_h, "black");
}

}  // namespace

std::string npd_chart_svg(std::span<const SizeBin> bins, std::span<const PowerLawFit> fits,
                          double threshold, std::string_view title,
                          std::string_view run_id) {
  SvgDocument svg(kWidth, kHeight);
  svg.metadata("run_id", run_id);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_lo = 0.0;
  double x_hi = 1.0;
  if (!bins.empty()) {
    x_lo = std::floor(std::log10(bins.front().low));
    x_hi = std::ceil(std::log10(bins.back().high));
  }
  std::optional<double> y_min;
  std::optional<double> y_max;
  for (const auto& b : bins) {
    if (b.count <= 0) continue;
    const double y = std::log10(b.npd);
    y_min = std::min(y_min.value_or(y), y);
    y_max = std::max(y_max.value_or(y), y);
  }
  double y_lo = std::floor(y_min.value_or(0.0));
  double y_hi = std::ceil(y_max.value_or(1.0));
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const Axis ax{x_lo, x_hi, kLeft, kLeft + plot_w};
  const Axis ay{y_lo, y_hi, kTop + plot_h, kTop};

  svg.text(kWidth / 2.0, 24.0, title, 15.0, "middle");
  frame(svg, plot_w, plot_h);
  for (int e = static_cast<int>(x_lo); e <= static_cast<int>(x_hi); ++e) {
    const double x = ax.map(e);
    svg.line(x, kTop + plot_h, x, kTop + plot_h + 5.0, "black");
    svg.text(x, kTop + plot_h + 20.0, decade_label(e), 11.0, "middle");
  }
  const int y_step = std::max(1, static_cast<int>(std::ceil((y_hi - y_lo) / 10.0)));
  for (int e = static_cast<int>(y_lo); e <= static_cast<int>(y_hi); e += y_step) {
    const double y = ay.map(e);
    svg.line(kLeft - 5.0, y, kLeft, y, "black");
    svg.text(kLeft - 8.0, y + 4.0, decade_label(e), 11.0, "end");
  }
  svg.text(kLeft + plot_w / 2.0, kHeight - 18.0, "Bin center S (m^2)", 12.0, "middle");
  const double tx = ax.map(std::log10(threshold));
  svg.line(tx, kTop, tx, kTop + plot_h, kOtherColor, 1.0, "stroke-dasharray=\"2 2\"");
  svg.text(18.0, kTop + plot_h / 2.0, "NPD (items/m^2)", 12.0, "middle",
           "transform=\"rotate(-90 18 " + format_fixed(kTop + plot_h / 2.0, 2) + ")\"");

  for (const auto& b : bins) {
    if (b.count <= 0) continue;
    std::string_view color = kOtherColor;
    if (b.low >= threshold) {
      color = kMacroColor;
    } else if (b.high <= threshold) {
      color = kMesoColor;
    }
    svg.circle(ax.map(std::log10(b.center)), ay.map(std::log10(b.npd)), 4.0, color);
  }

  double label_y = kTop + 16.0;
  for (const auto& f : fits) {
    const std::string_view color = f.segment == Segment::Macro ? kMacroColor : kMesoColor;
    const double x0 = x_lo;
    const double x1 = x_hi;
    const auto clamp_y = [&](double y) { return std::clamp(y, y_lo, y_hi); };
    svg.line(ax.map(x0), ay.map(clamp_y(f.log10_c + f.alpha * x0)), ax.map(x1),
             ay.map(clamp_y(f.log10_c + f.alpha * x1)), color, 1.5,
             "stroke-dasharray=\"6 3\"");
    const std::string label = std::string(f.segment == Segment::Macro ? "Macro" : "Meso") +
                              ": alpha = " + format_fixed(f.alpha, 3) +
                              ", R^2 = " + format_fixed(f.r_squared, 3) +
                              ", n = " + std::to_string(f.bins_used);
    svg.text(kLeft + plot_w - 8.0, label_y, label, 12.0, "end",
             "fill=\"" + std::string(color) + "\"");
    label_y += 16.0;
  }
  return svg.str();
}

std::string sector_chart_svg(std::span<const SectorMetrics> sectors, std::string_view run_id) {
  SvgDocument svg(kWidth, kHeight);
  svg.metadata("run_id", run_id);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const Axis ay{0.0, 1.0, kTop + plot_h, kTop};

  svg.text(kWidth / 2.0, 24.0, "Normalized CCI and ERI per sector", 15.0, "middle");
  frame(svg, plot_w, plot_h);
  for (int k = 0; k <= 4; ++k) {
    const double v = k / 4.0;
    svg.line(kLeft - 5.0, ay.map(v), kLeft, ay.map(v), "black");
    svg.text(kLeft - 8.0, ay.map(v) + 4.0, format_fixed(v, 2), 11.0, "end");
  }
  const double slot = sectors.empty() ? plot_w : plot_w / static_cast<double>(sectors.size());
  const double bar = slot * 0.35;
  for (std::size_t j = 0; j < sectors.size(); ++j) {
    const auto& s = sectors[j];
    const double x = kLeft + slot * static_cast<double>(j) + slot * 0.15;
    svg.rect(x, ay.map(s.cci_norm), bar, ay.map(0.0) - ay.map(s.cci_norm), "#1f77b4");
    svg.rect(x + bar, ay.map(s.eri_norm), bar, ay.map(0.0) - ay.map(s.eri_norm), "#d62728");
    svg.text(x + bar, kTop + plot_h + 18.0, "S" + std::to_string(s.sector.index), 11.0,
             "middle");
  }
  svg.rect(kLeft + plot_w - 150.0, kTop + 4.0, 12.0, 12.0, "#1f77b4");
  svg.text(kLeft + plot_w - 132.0, kTop + 14.0, "CCI (normalized)", 11.0);
  svg.rect(kLeft + plot_w - 150.0, kTop + 22.0, 12.0, 12.0, "#d62728");
  svg.text(kLeft + plot_w - 132.0, kTop + 32.0, "ERI (normalized)", 11.0);
  svg.text(kLeft + plot_w / 2.0, kHeight - 18.0, "Sector (ascending alongshore)", 12.0,
           "middle");
  return svg.str();
}

std::string composition_chart_svg(std::span<const GroupComposition> groups,
                                  std::string_view run_id) {
  SvgDocument svg(kWidth, kHeight);
  svg.metadata("run_id", run_id);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const Axis ay{0.0, 100.0, kTop + plot_h, kTop};

  svg.text(kWidth / 2.0, 24.0, "Source composition: count share vs area share", 15.0,
           "middle");
  frame(svg, plot_w, plot_h);
  for (int k = 0; k <= 5; ++k) {
    const double v = k * 20.0;
    svg.line(kLeft - 5.0, ay.map(v), kLeft, ay.map(v), "black");
    svg.text(kLeft - 8.0, ay.map(v) + 4.0, format_fixed(v, 0) + "%", 11.0, "end");
  }
  const double slot = groups.empty() ? plot_w : plot_w / static_cast<double>(groups.size());
  const double bar = slot * 0.3;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& c = groups[g];
    const double x = kLeft + slot * static_cast<double>(g) + slot * 0.2;
    const double count_pct = c.count_share * 100.0;
    const double area_pct = c.area_share * 100.0;
    svg.rect(x, ay.map(count_pct), bar, ay.map(0.0) - ay.map(count_pct), "#2ca02c");
    svg.rect(x + bar, ay.map(area_pct), bar, ay.map(0.0) - ay.map(area_pct), "#9467bd");
    svg.text(x + bar / 2.0, ay.map(count_pct) - 4.0, format_fixed(count_pct, 2) + "%", 10.0,
             "middle");
    svg.text(x + bar * 1.5, ay.map(area_pct) - 4.0, format_fixed(area_pct, 2) + "%", 10.0,
             "middle");
    svg.text(x + bar, kTop + plot_h + 18.0, to_string(c.group), 12.0, "middle");
  }
  svg.rect(kLeft + plot_w - 130.0, kTop + 4.0, 12.0, 12.0, "#2ca02c");
  svg.text(kLeft + plot_w - 112.0, kTop + 14.0, "Item count", 11.0);
  svg.rect(kLeft + plot_w - 130.0, kTop + 22.0, 12.0, 12.0, "#9467bd");
  svg.text(kLeft + plot_w - 112.0, kTop + 32.0, "Physical area", 11.0);
  return svg.str();
}

}  // namespace litterscope

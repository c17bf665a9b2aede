#include "covkit/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "covkit/errors.hpp"

namespace covkit {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 208.0;
constexpr double kMarginTop = 24.0;
constexpr double kMarginBottom = 52.0;

constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
};

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_chart_svg(std::span<const NamedCurve> curves) {
  if (curves.empty()) throw EmptyInput("no curves to chart");
  double min_logk = std::numeric_limits<double>::infinity();
  double max_logk = -std::numeric_limits<double>::infinity();
  double min_value = 0.0;
  double max_value = 1.0;
  bool any_normalized = false;
  for (const NamedCurve& curve : curves) {
    if (curve.points.empty()) throw EmptyInput("curve '" + curve.label + "' has no points");
    if (curve.label.starts_with("Normalized")) any_normalized = true;
    for (const CurvePoint& p : curve.points) {
      if (p.k < 1) throw ParseError("chart requires k >= 1");
      min_logk = std::min(min_logk, std::log10(static_cast<double>(p.k)));
      max_logk = std::max(max_logk, std::log10(static_cast<double>(p.k)));
      min_value = std::min(min_value, p.value);
      max_value = std::max(max_value, p.value);
    }
  }
  if (max_logk - min_logk < 1e-9) {
    min_logk -= 0.5;
    max_logk += 0.5;
  }
  min_value = std::floor(min_value * 10.0) / 10.0;
  max_value = std::ceil(max_value * 10.0) / 10.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto x_of = [&](double k) {
    return kMarginLeft + (std::log10(k) - min_logk) / (max_logk - min_logk) * plot_w;
  };
  const auto y_of = [&](double v) {
    return kMarginTop + (max_value - v) / (max_value - min_value) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // y grid and labels
  constexpr int kYTicks = 5;
  for (int i = 0; i <= kYTicks; ++i) {
    const double v = min_value + (max_value - min_value) * i / kYTicks;
    const double y = y_of(v);
    svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kMarginLeft + plot_w) << "\" y2=\"" << num(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << num(kMarginLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << num(v)
        << "</text>\n";
  }

  // x ticks at powers of ten inside the range, plus the endpoints
  std::vector<double> xticks;
  for (int e = static_cast<int>(std::ceil(min_logk - 1e-9));
       e <= static_cast<int>(std::floor(max_logk + 1e-9)); ++e)
    xticks.push_back(std::pow(10.0, e));
  if (xticks.empty()) {
    xticks.push_back(std::pow(10.0, min_logk));
    xticks.push_back(std::pow(10.0, max_logk));
  }
  for (const double t : xticks) {
    const double x = x_of(t);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kMarginTop) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(kMarginTop + plot_h)
        << "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
    char label[32];
    std::snprintf(label, sizeof(label), "%g", t);
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(kMarginTop + plot_h + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << label
        << "</text>\n";
  }

  // axes
  svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(kMarginTop) << "\" x2=\""
      << num(kMarginLeft) << "\" y2=\"" << num(kMarginTop + plot_h)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(kMarginTop + plot_h)
      << "\" x2=\"" << num(kMarginLeft + plot_w) << "\" y2=\"" << num(kMarginTop + plot_h)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 14)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">k</text>\n";
  svg << "<text x=\"16\" y=\"" << num(kMarginTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
      << num(kMarginTop + plot_h / 2) << ")\">coverage</text>\n";

  // dashed reference line at y = 0 for normalized (or negative) curves
  if ((any_normalized || min_value < 0.0) && min_value <= 0.0 && max_value >= 0.0) {
    const double y = y_of(0.0);
    svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kMarginLeft + plot_w) << "\" y2=\"" << num(y)
        << "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  }

  // curves and legend
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (const CurvePoint& p : curves[c].points)
      svg << num(x_of(static_cast<double>(p.k))) << "," << num(y_of(p.value)) << " ";
    svg << "\"/>\n";
    for (const CurvePoint& p : curves[c].points)
      svg << "<circle cx=\"" << num(x_of(static_cast<double>(p.k))) << "\" cy=\""
          << num(y_of(p.value)) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";

    const double ly = kMarginTop + 14 + 18 * static_cast<double>(c);
    const double lx = kMarginLeft + plot_w + 16;
    svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 22)
        << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.8\"/>\n";
    svg << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(curves[c].label)
        << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace covkit

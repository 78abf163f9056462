#include "bubbles/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bubbles/json_io.hpp"

namespace bubbles {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::vector<std::string> default_palette(int n) {
  static const char* base[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                               "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    if (i < 10) {
      out.emplace_back(base[i]);
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "hsl(%d,55%%,55%%)", (i * 137) % 360);
      out.emplace_back(buf);
    }
  }
  return out;
}

std::string render_svg(const RenderSpec& spec) {
  const Configuration& c = spec.config;
  const auto palette = spec.palette.empty() ? default_palette(c.region_count()) : spec.palette;
  if (static_cast<int>(palette.size()) < c.region_count()) throw PreconditionError("render: palette has fewer colors than regions");
  if (spec.width < 100 || spec.height < 100) throw PreconditionError("render: canvas too small");

  const double margin = 40.0;
  const double w = spec.width;
  const double h = spec.height;
  double extent = 1.0;
  for (double x : c.breakpoints()) extent = std::max(extent, std::abs(x));
  extent *= 1.1;
  const double axis_y = h - 60.0;
  auto px = [&](double x) { return margin + (x + extent) / (2.0 * extent) * (w - 2.0 * margin); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
       std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
       std::to_string(spec.height) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
       "\" fill=\"white\"/>\n";

  if (spec.show_density_cone) {
    const double top = margin * 0.5;
    s += "<polyline class=\"density\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\" points=\"" + num(px(-extent)) +
         "," + num(top) + " " + num(px(0.0)) + "," + num(axis_y) + " " + num(px(extent)) + "," + num(top) + "\"/>\n";
  }

  s += "<line class=\"axis\" x1=\"" + num(margin) + "\" y1=\"" + num(axis_y) + "\" x2=\"" + num(w - margin) +
       "\" y2=\"" + num(axis_y) + "\" stroke=\"black\"/>\n";

  for (std::size_t k = 0; k < c.cell_count(); ++k) {
    const Cell& cell = c.cells()[k];
    if (!cell) continue;
    const double x0 = px(c.lo(k));
    const double x1 = px(c.hi(k));
    s += "<rect class=\"cell\" data-region=\"" + std::to_string(cell->index) + "\" data-lo=\"" +
         format_double(c.lo(k)) + "\" data-hi=\"" + format_double(c.hi(k)) + "\" x=\"" + num(x0) + "\" y=\"" +
         num(axis_y - 24.0) + "\" width=\"" + num(x1 - x0) + "\" height=\"24\" fill=\"" +
         palette[static_cast<std::size_t>(cell->index)] + "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    s += "<text x=\"" + num(0.5 * (x0 + x1)) + "\" y=\"" + num(axis_y - 30.0) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">M" + std::to_string(cell->index + 1) +
         "</text>\n";
  }

  for (double x : c.breakpoints()) {
    s += "<line class=\"tick\" x1=\"" + num(px(x)) + "\" y1=\"" + num(axis_y - 4.0) + "\" x2=\"" + num(px(x)) +
         "\" y2=\"" + num(axis_y + 6.0) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(px(x)) + "\" y=\"" + num(axis_y + 20.0) +
         "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" + short_num(x) + "</text>\n";
  }
  s += "<text x=\"" + num(px(0.0)) + "\" y=\"" + num(axis_y + 36.0) +
       "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">0</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace bubbles

#include "gapscope/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gapscope {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

} // namespace

std::string band_diagram_svg(const SpectrumReport& rep) {
  constexpr double width = 800.0, height = 120.0, margin = 40.0;
  constexpr double band_y = 45.0, band_h = 30.0, axis_y = 95.0;

  double lo = 0.0, hi = 1.0;
  if (!rep.bands.empty()) {
    lo = rep.bands.front().lo;
    hi = rep.bands.back().hi;
  }
  const double pad = 0.05 * std::max(hi - lo, 1e-9);
  lo -= pad;
  hi += pad;
  const auto x_of = [&](double e) {
    return margin + (e - lo) / (hi - lo) * (width - 2.0 * margin);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + num(margin) + "\" y1=\"" + num(axis_y) + "\" x2=\"" +
         num(width - margin) + "\" y2=\"" + num(axis_y) + "\" stroke=\"black\"/>\n";

  // Ticks at the integers inside the window.
  for (double t = std::ceil(lo); t <= std::floor(hi); t += 1.0) {
    const double x = x_of(t);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(axis_y) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(axis_y + 5.0) + "\" stroke=\"black\"/>\n";
    char label[32];
    std::snprintf(label, sizeof label, "%g", t);
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(axis_y + 16.0) +
           "\" font-size=\"10\" text-anchor=\"middle\">" + label + "</text>\n";
  }

  for (const Band& b : rep.bands) {
    const double x0 = x_of(b.lo);
    const double w = std::max(x_of(b.hi) - x0, 0.5);
    svg += "<rect x=\"" + num(x0) + "\" y=\"" + num(band_y) + "\" width=\"" + num(w) +
           "\" height=\"" + num(band_h) + "\" fill=\"#4878a8\" stroke=\"#123\"/>\n";
  }
  for (const ClosedGapCertificate& c : rep.closed_gaps) {
    const double x = x_of(c.energy);
    const double y = band_y + band_h / 2.0;
    svg += "<path d=\"M " + num(x) + " " + num(y - 9.0) + " L " + num(x + 6.0) + " " + num(y) +
           " L " + num(x) + " " + num(y + 9.0) + " L " + num(x - 6.0) + " " + num(y) +
           " Z\" fill=\"#e0b020\" stroke=\"#502\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace gapscope

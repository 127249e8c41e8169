#include "rcurves/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rcurves {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string render_svg(std::span<const LabeledCurve> curves, const PlotOptions& opts) {
  const double left = 60, right = 20, top = 40, bottom = 50;
  const double pw = opts.width - left - right;
  const double ph = opts.height - top - bottom;

  double x_max = 0.0;
  for (const auto& lc : curves) {
    const auto& c = lc.curve;
    if (std::isfinite(c.horizon())) x_max = std::max(x_max, c.horizon());
    if (!c.breakpoints().empty()) x_max = std::max(x_max, c.breakpoints().back() * 1.1);
  }
  if (!(x_max > 0.0)) x_max = 1.0;

  auto sx = [&](double e) { return left + pw * std::min(e, x_max) / x_max; };
  auto sy = [&](double v) { return top + ph * (1.0 - v); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.width) + "\" height=\"" +
       std::to_string(opts.height) + "\" viewBox=\"0 0 " + std::to_string(opts.width) + " " +
       std::to_string(opts.height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt("%.1f", opts.width / 2.0) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
       escape(opts.title) + "</text>\n";
  // axes
  s += "<line x1=\"" + fmt("%.1f", left) + "\" y1=\"" + fmt("%.1f", top + ph) + "\" x2=\"" + fmt("%.1f", left + pw) +
       "\" y2=\"" + fmt("%.1f", top + ph) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt("%.1f", left) + "\" y1=\"" + fmt("%.1f", top) + "\" x2=\"" + fmt("%.1f", left) +
       "\" y2=\"" + fmt("%.1f", top + ph) + "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double e = x_max * k / 4.0, v = k / 4.0;
    s += "<text x=\"" + fmt("%.1f", sx(e)) + "\" y=\"" + fmt("%.1f", top + ph + 18) +
         "\" text-anchor=\"middle\" font-size=\"11\">" + fmt("%.3g", e) + "</text>\n";
    s += "<text x=\"" + fmt("%.1f", left - 6) + "\" y=\"" + fmt("%.1f", sy(v) + 4) +
         "\" text-anchor=\"end\" font-size=\"11\">" + fmt("%.2f", v) + "</text>\n";
  }
  s += "<text x=\"" + fmt("%.1f", left + pw / 2) + "\" y=\"" + fmt("%.1f", opts.height - 10.0) +
       "\" text-anchor=\"middle\" font-size=\"13\">" + escape(opts.x_label) + "</text>\n";
  s += "<text x=\"16\" y=\"" + fmt("%.1f", top + ph / 2) + "\" text-anchor=\"middle\" font-size=\"13\" " +
       "transform=\"rotate(-90 16 " + fmt("%.1f", top + ph / 2) + ")\">" + escape(opts.y_label) + "</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i].curve;
    const char* color = kPalette[i % std::size(kPalette)];
    std::string pts = fmt("%.2f", sx(0.0)) + "," + fmt("%.2f", sy(c(0.0)));
    double prev = c(0.0);
    const double end = std::isfinite(c.horizon()) ? std::min(c.horizon(), x_max) : x_max;
    for (std::size_t k = 0; k < c.breakpoints().size(); ++k) {
      const double e = c.breakpoints()[k];
      if (e == 0.0) continue;
      if (e > end) break;
      pts += " " + fmt("%.2f", sx(e)) + "," + fmt("%.2f", sy(prev));
      prev = c.values()[k];
      pts += " " + fmt("%.2f", sx(e)) + "," + fmt("%.2f", sy(prev));
    }
    pts += " " + fmt("%.2f", sx(end)) + "," + fmt("%.2f", sy(prev));
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" + pts +
         "\"/>\n";
    const double ly = top + 14.0 + 18.0 * static_cast<double>(i);
    s += "<line x1=\"" + fmt("%.1f", left + pw - 150) + "\" y1=\"" + fmt("%.1f", ly) + "\" x2=\"" +
         fmt("%.1f", left + pw - 126) + "\" y2=\"" + fmt("%.1f", ly) + "\" stroke=\"" + color +
         "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + fmt("%.1f", left + pw - 120) + "\" y=\"" + fmt("%.1f", ly + 4) + "\" font-size=\"12\">" +
         escape(curves[i].id) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace rcurves

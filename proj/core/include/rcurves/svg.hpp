#pragma once

#include <span>
#include <string>

#include "rcurves/curve.hpp"

namespace rcurves {

struct PlotOptions {
  std::string title;
  std::string x_label = "epsilon";
  std::string y_label = "robust error";
  int width = 640;
  int height = 420;
};

/// Deterministic SVG with one step polyline per curve and a legend.
std::string render_svg(std::span<const LabeledCurve> curves, const PlotOptions& opts = {});

}  // namespace rcurves

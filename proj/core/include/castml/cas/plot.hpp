#pragma once

#include <string>
#include <vector>

#include "castml/cas/expr.hpp"

namespace castml::cas {

inline constexpr int kPlotSamples = 257;
inline constexpr double kDefaultPlotMin = -5.0;
inline constexpr double kDefaultPlotMax = 5.0;

struct PlotSample {
  double x = 0;
  double y = 0;
};

struct PlotResult {
  std::string svg;
  /// Finite-sample runs; each becomes one polyline.
  std::vector<std::vector<PlotSample>> segments;
  double ymin = -1;
  double ymax = 1;
  std::vector<std::string> diagnostics;
};

/// Samples `e` at kPlotSamples uniform points over [xmin, xmax] in its only
/// free symbol (x when constant). Throws InvalidArgument for more than one
/// free symbol or a bad range.
PlotResult plot_svg(const Expr& e, double xmin = kDefaultPlotMin, double xmax = kDefaultPlotMax);

}  // namespace castml::cas

#include "castml/cas/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "castml/cas/numeric.hpp"

namespace castml::cas {

namespace {

constexpr double kWidth = 400;
constexpr double kHeight = 300;
constexpr double kMargin = 10;

struct Viewport {
  double xmin, xmax, ymin, ymax;

  [[nodiscard]] double px(double x) const { return kMargin + (x - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin); }
  [[nodiscard]] double py(double y) const { return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin); }
};

std::string num(double v) { return fmt::format("{:.3f}", v); }

}  // namespace

PlotResult plot_svg(const Expr& e, double xmin, double xmax) {
  if (!std::isfinite(xmin) || !std::isfinite(xmax) || !(xmin < xmax)) {
    throw CasError(CasErrorCode::InvalidArgument, "plot range must satisfy xmin < xmax");
  }
  auto symbols = free_symbols(e);
  symbols.erase("pi");
  symbols.erase("e");
  if (symbols.size() > 1) {
    throw CasError(CasErrorCode::InvalidArgument, "plot needs an expression in a single variable");
  }
  const std::string var = symbols.empty() ? "x" : *symbols.begin();

  PlotResult result;
  std::vector<PlotSample> current;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  Bindings bindings;
  for (int i = 0; i < kPlotSamples; ++i) {
    const double x = i == kPlotSamples - 1 ? xmax : xmin + (xmax - xmin) * i / (kPlotSamples - 1);
    bindings[var] = x;
    const double y = eval_numeric(e, bindings);
    if (std::isfinite(y)) {
      current.push_back({x, y});
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    } else if (!current.empty()) {
      result.segments.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) result.segments.push_back(std::move(current));

  if (result.segments.empty()) {
    result.diagnostics.emplace_back("AllSamplesInvalid: no finite sample in the plot range");
    lo = -1;
    hi = 1;
  } else if (lo == hi) {
    lo -= 1;
    hi += 1;
  }
  result.ymin = lo;
  result.ymax = hi;

  const Viewport view{xmin, xmax, lo, hi};
  std::string svg = fmt::format(
      R"(<svg xmlns="http://www.w3.org/2000/svg" class="castml-plot" width="{0}" height="{1}" viewBox="0 0 {0} {1}" )"
      R"(data-xmin="{2}" data-xmax="{3}" data-ymin="{4}" data-ymax="{5}">)",
      kWidth, kHeight, fmt::format("{:g}", xmin), fmt::format("{:g}", xmax), fmt::format("{:g}", lo),
      fmt::format("{:g}", hi));
  svg += fmt::format(R"(<rect x="0" y="0" width="{}" height="{}" fill="white"/>)", kWidth, kHeight);
  // Axes sit at zero when it is in range, otherwise on the border.
  const double axis_y = view.py(std::clamp(0.0, lo, hi));
  const double axis_x = view.px(std::clamp(0.0, xmin, xmax));
  svg += fmt::format(R"(<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>)", num(kMargin),
                     num(axis_y), num(kWidth - kMargin), num(axis_y));
  svg += fmt::format(R"(<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>)", num(axis_x),
                     num(kMargin), num(axis_x), num(kHeight - kMargin));
  for (const auto& segment : result.segments) {
    svg += R"(<polyline fill="none" stroke="blue" points=")";
    for (std::size_t i = 0; i < segment.size(); ++i) {
      if (i) svg += ' ';
      svg += num(view.px(segment[i].x));
      svg += ',';
      svg += num(view.py(segment[i].y));
    }
    svg += R"("/>)";
  }
  svg += "</svg>";
  result.svg = std::move(svg);
  return result;
}

}  // namespace castml::cas

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covertbf/experiment.hpp"

namespace covertbf {

enum class PlotKind { kCdf, kSweep, kDetection };

struct PlotSpec {
  PlotKind kind = PlotKind::kSweep;
  std::string title;
  std::string x_label;
  std::string y_label;
  /// Drawn as a vertical marker on CDF plots (the 2 eps^2 budget).
  std::optional<double> threshold;
  /// Sweep plots: plot rate_bits instead of mi_bits.
  bool rate = false;
  /// CDF plots: use D(p1||p0) instead of D(p0||p1).
  bool kl10 = false;
};

/// Deterministic SVG text for the rows. Throws InvalidInput when there is
/// nothing to plot.
std::string render_svg(const std::vector<ResultRow>& rows, const PlotSpec& spec);

void render_plot(const std::string& csv_path, const std::string& svg_path, const PlotSpec& spec);

}  // namespace covertbf

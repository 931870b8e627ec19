#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "specrank/experiment.hpp"

namespace specrank {

enum class SummaryMetric { kRelLinf, kRhoMax, kRhoMean };
std::string_view to_string(SummaryMetric metric);

// One heatmap cell; value is clamped to [0, 1] when drawn.
struct HeatmapCell {
  double p = 0.0;
  double eta = 0.0;
  double value = 0.0;
};

// Cell values of `metric` for one (n, method), on the grid of distinct p and
// eta values. Throws kNonRectangularGrid when a grid point is missing,
// duplicated, or has no successful trials.
struct HeatmapGrid {
  std::vector<double> p_values;    // ascending
  std::vector<double> eta_values;  // ascending
  std::vector<double> values;      // row-major, rows indexed by eta
  double at(std::size_t eta_index, std::size_t p_index) const {
    return values[eta_index * p_values.size() + p_index];
  }
};
HeatmapGrid heatmap_grid(const std::vector<SummaryRow>& summary, std::size_t n,
                         Method method, SummaryMetric metric);

// Gray level for a clamped value: 255 (white) at 0, 0 (black) at 1.
int gray_level(double value);

// Grayscale heatmap with p on the x axis and eta on the y axis, overlaid with
// iso-SNR curves eta = s / (coefficient sqrt(p)) for each s in `contours`.
std::string heatmap_svg(const HeatmapGrid& grid, double snr_coefficient,
                        const std::vector<double>& contours,
                        const std::string& title);

void emit_heatmap(const std::vector<SummaryRow>& summary, std::size_t n,
                  Method method, SummaryMetric metric, double snr_coefficient,
                  const std::filesystem::path& path);

struct WhiskerStats {
  double max_half_width = 0.0;
  double median_half_width = 0.0;
};

// Per-index half-width (max - min) / 2 of the error columns.
WhiskerStats whisker_stats(const std::vector<Vector>& errors);

// Reference curve in red with per-index min/max whiskers of reference + error.
std::string errorbar_svg(const Vector& reference, const std::vector<Vector>& errors,
                         const std::string& title);

WhiskerStats emit_errorbar(const Vector& reference,
                           const std::vector<Vector>& errors,
                           const std::filesystem::path& path,
                           const std::string& title = {});

}  // namespace specrank

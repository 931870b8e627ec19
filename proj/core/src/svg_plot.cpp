#include "specrank/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "specrank/errors.hpp"

namespace specrank {
namespace {

constexpr double kLeft = 70.0, kTop = 40.0, kPlotW = 420.0, kPlotH = 420.0;
constexpr double kWidth = kLeft + kPlotW + 110.0, kHeight = kTop + kPlotH + 60.0;

std::string num(double x, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Linear map from [lo, hi] to pixel range [a, b].
struct Axis {
  double lo, hi, a, b;
  double operator()(double v) const {
    return hi == lo ? (a + b) / 2 : a + (v - lo) / (hi - lo) * (b - a);
  }
};

// Cell edges: midpoints between neighbors, half a gap beyond the ends.
std::vector<double> edges(const std::vector<double>& v) {
  std::vector<double> e(v.size() + 1);
  if (v.size() == 1) {
    e[0] = v[0] - 0.5;
    e[1] = v[0] + 0.5;
    return e;
  }
  for (std::size_t i = 1; i < v.size(); ++i) e[i] = (v[i - 1] + v[i]) / 2;
  e[0] = v[0] - (v[1] - v[0]) / 2;
  e[v.size()] = v.back() + (v.back() - v[v.size() - 2]) / 2;
  return e;
}

std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w, 0) +
         "\" height=\"" + num(h, 0) + "\" viewBox=\"0 0 " + num(w, 0) + " " +
         num(h, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

double metric_value(const SummaryRow& row, SummaryMetric metric) {
  switch (metric) {
    case SummaryMetric::kRelLinf: return row.rel_linf_mean;
    case SummaryMetric::kRhoMax: return row.rho_max_mean;
    case SummaryMetric::kRhoMean: return row.rho_mean_mean;
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(SummaryMetric metric) {
  switch (metric) {
    case SummaryMetric::kRelLinf: return "rel_linf";
    case SummaryMetric::kRhoMax: return "rho_max";
    case SummaryMetric::kRhoMean: return "rho_mean";
  }
  return "unknown";
}

HeatmapGrid heatmap_grid(const std::vector<SummaryRow>& summary, std::size_t n,
                         Method method, SummaryMetric metric) {
  std::map<std::pair<double, double>, const SummaryRow*> cells;
  for (const auto& row : summary) {
    if (row.n != n || row.method != method) continue;
    if (!cells.emplace(std::pair{row.eta, row.p}, &row).second) {
      throw Error(ErrorKind::kNonRectangularGrid, "duplicate grid point");
    }
  }
  if (cells.empty()) throw Error(ErrorKind::kNonRectangularGrid, "empty grid");
  HeatmapGrid grid;
  for (const auto& [key, row] : cells) {
    grid.eta_values.push_back(key.first);
    grid.p_values.push_back(key.second);
  }
  for (auto* v : {&grid.eta_values, &grid.p_values}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  for (const double eta : grid.eta_values) {
    for (const double p : grid.p_values) {
      const auto it = cells.find({eta, p});
      if (it == cells.end()) {
        throw Error(ErrorKind::kNonRectangularGrid,
                    "missing grid point eta=" + num(eta, 4) + " p=" + num(p, 4));
      }
      if (it->second->count == 0) {
        throw Error(ErrorKind::kNonRectangularGrid,
                    "no successful trials at eta=" + num(eta, 4) + " p=" + num(p, 4));
      }
      grid.values.push_back(metric_value(*it->second, metric));
    }
  }
  return grid;
}

int gray_level(double value) {
  const double v = std::isnan(value) ? 1.0 : std::clamp(value, 0.0, 1.0);
  return static_cast<int>(std::lround(255.0 * (1.0 - v)));
}

std::string heatmap_svg(const HeatmapGrid& grid, double snr_coefficient,
                        const std::vector<double>& contours,
                        const std::string& title) {
  const auto pe = edges(grid.p_values);
  const auto ee = edges(grid.eta_values);
  const Axis x{pe.front(), pe.back(), kLeft, kLeft + kPlotW};
  const Axis y{ee.front(), ee.back(), kTop + kPlotH, kTop};

  std::ostringstream s;
  s << header(kWidth, kHeight);
  s << "<text x=\"" << num(kLeft + kPlotW / 2, 0) << "\" y=\"24\" text-anchor=\"middle\">"
    << escape(title) << "</text>\n";
  s << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < grid.eta_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.p_values.size(); ++j) {
      const int g = gray_level(grid.at(i, j));
      s << "<rect x=\"" << num(x(pe[j])) << "\" y=\"" << num(y(ee[i + 1]))
        << "\" width=\"" << num(x(pe[j + 1]) - x(pe[j])) << "\" height=\""
        << num(y(ee[i]) - y(ee[i + 1])) << "\" fill=\"rgb(" << g << ',' << g << ',' << g
        << ")\"/>\n";
    }
  }
  s << "</g>\n";
  s << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kPlotW)
    << "\" height=\"" << num(kPlotH) << "\" fill=\"none\" stroke=\"black\"/>\n";

  s << "<defs><clipPath id=\"plot\"><rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop)
    << "\" width=\"" << num(kPlotW) << "\" height=\"" << num(kPlotH)
    << "\"/></clipPath></defs>\n";
  const double p_lo = std::max(pe.front(), 1e-6);
  for (const double snr : contours) {
    if (!(snr_coefficient > 0.0)) break;
    std::ostringstream pts;
    double label_x = 0.0, label_y = 0.0;
    bool visible = false;
    constexpr int kSamples = 200;
    for (int k = 0; k <= kSamples; ++k) {
      const double p = p_lo + (pe.back() - p_lo) * k / kSamples;
      const double eta = snr / (snr_coefficient * std::sqrt(p));
      pts << num(x(p)) << ',' << num(y(eta)) << ' ';
      if (eta >= ee.front() && eta <= ee.back()) {
        visible = true;
        label_x = x(p);
        label_y = y(eta);
      }
    }
    s << "<polyline clip-path=\"url(#plot)\" points=\"" << pts.str()
      << "\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
    if (visible) {
      s << "<text x=\"" << num(label_x - 4) << "\" y=\"" << num(label_y - 6)
        << "\" text-anchor=\"end\" fill=\"red\" font-weight=\"bold\">SNR=" << num(snr, 1) << "</text>\n";
    }
  }

  for (const double p : grid.p_values) {
    s << "<text x=\"" << num(x(p)) << "\" y=\"" << num(kTop + kPlotH + 16)
      << "\" text-anchor=\"middle\" font-size=\"9\">" << num(p) << "</text>\n";
  }
  for (const double eta : grid.eta_values) {
    s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y(eta) + 3)
      << "\" text-anchor=\"end\" font-size=\"9\">" << num(eta) << "</text>\n";
  }
  s << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\"" << num(kHeight - 16)
    << "\" text-anchor=\"middle\">p</text>\n";
  s << "<text x=\"20\" y=\"" << num(kTop + kPlotH / 2)
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << num(kTop + kPlotH / 2)
    << ")\">eta</text>\n";

  // Legend: white = 0, black = 1.
  const double lx = kLeft + kPlotW + 30;
  s << "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
       "<stop offset=\"0\" stop-color=\"white\"/><stop offset=\"1\" stop-color=\"black\"/>"
       "</linearGradient></defs>\n";
  s << "<rect x=\"" << num(lx) << "\" y=\"" << num(kTop) << "\" width=\"16\" height=\""
    << num(kPlotH) << "\" fill=\"url(#scale)\" stroke=\"black\"/>\n";
  s << "<text x=\"" << num(lx + 22) << "\" y=\"" << num(kTop + 10) << "\">1</text>\n";
  s << "<text x=\"" << num(lx + 22) << "\" y=\"" << num(kTop + kPlotH) << "\">0</text>\n";
  s << "</svg>\n";
  return s.str();
}

void emit_heatmap(const std::vector<SummaryRow>& summary, std::size_t n, Method method,
                  SummaryMetric metric, double snr_coefficient,
                  const std::filesystem::path& path) {
  const auto grid = heatmap_grid(summary, n, method, metric);
  const std::string title = std::string(to_string(metric)) + " (" +
                            std::string(to_string(method)) + ", n=" +
                            std::to_string(n) + ")";
  write_text_file(path, heatmap_svg(grid, snr_coefficient, {0.5, 0.8, 1.7}, title));
}

WhiskerStats whisker_stats(const std::vector<Vector>& errors) {
  WhiskerStats out;
  if (errors.empty()) return out;
  const auto n = errors.front().size();
  std::vector<double> half(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double lo = errors.front()[i], hi = lo;
    for (const auto& e : errors) {
      lo = std::min(lo, e[i]);
      hi = std::max(hi, e[i]);
    }
    half[static_cast<std::size_t>(i)] = (hi - lo) / 2;
  }
  out.max_half_width = *std::max_element(half.begin(), half.end());
  const auto mid = half.begin() + static_cast<std::ptrdiff_t>(half.size() / 2);
  std::nth_element(half.begin(), mid, half.end());
  out.median_half_width = *mid;
  if (half.size() % 2 == 0) {
    out.median_half_width =
        (out.median_half_width + *std::max_element(half.begin(), mid)) / 2;
  }
  return out;
}

std::string errorbar_svg(const Vector& reference, const std::vector<Vector>& errors,
                         const std::string& title) {
  const auto n = reference.size();
  for (const auto& e : errors) {
    if (e.size() != n) throw Error(ErrorKind::kInvalidArgument, "error length mismatch");
  }
  Vector lo = reference, hi = reference;
  if (!errors.empty()) lo = hi = reference + errors.front();
  for (const auto& e : errors) {
    lo = lo.cwiseMin(reference + e);
    hi = hi.cwiseMax(reference + e);
  }
  double y_lo = lo.minCoeff(), y_hi = hi.maxCoeff();
  const double pad = 0.05 * std::max(y_hi - y_lo, 1e-12);
  y_lo -= pad;
  y_hi += pad;
  const double plot_w = 560.0, width = kLeft + plot_w + 30.0;
  const Axis x{1.0, static_cast<double>(std::max<Eigen::Index>(n, 2)), kLeft,
               kLeft + plot_w};
  const Axis y{y_lo, y_hi, kTop + kPlotH, kTop};

  std::ostringstream s;
  s << header(width, kHeight);
  s << "<text x=\"" << num(kLeft + plot_w / 2, 0) << "\" y=\"24\" text-anchor=\"middle\">"
    << escape(title) << "</text>\n";
  s << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w)
    << "\" height=\"" << num(kPlotH) << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<g stroke=\"black\" stroke-width=\"1\">\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x(static_cast<double>(i + 1));
    if (errors.empty()) continue;
    if (hi[i] - lo[i] <= 0.0) {
      s << "<circle cx=\"" << num(xi) << "\" cy=\"" << num(y(lo[i]))
        << "\" r=\"1.2\" fill=\"black\" stroke=\"none\"/>\n";
    } else {
      s << "<line x1=\"" << num(xi) << "\" y1=\"" << num(y(lo[i])) << "\" x2=\"" << num(xi)
        << "\" y2=\"" << num(y(hi[i])) << "\"/>\n";
    }
  }
  s << "</g>\n<polyline points=\"";
  for (Eigen::Index i = 0; i < n; ++i) {
    s << num(x(static_cast<double>(i + 1))) << ',' << num(y(reference[i])) << ' ';
  }
  s << "\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
  s << "<text x=\"" << num(kLeft) << "\" y=\"" << num(kTop + kPlotH + 16)
    << "\" font-size=\"9\">1</text>\n";
  s << "<text x=\"" << num(kLeft + plot_w) << "\" y=\"" << num(kTop + kPlotH + 16)
    << "\" text-anchor=\"end\" font-size=\"9\">" << n << "</text>\n";
  s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(kTop + 8)
    << "\" text-anchor=\"end\" font-size=\"9\">" << num(y_hi, 3) << "</text>\n";
  s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(kTop + kPlotH)
    << "\" text-anchor=\"end\" font-size=\"9\">" << num(y_lo, 3) << "</text>\n";
  s << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 16)
    << "\" text-anchor=\"middle\">index</text>\n";
  s << "</svg>\n";
  return s.str();
}

WhiskerStats emit_errorbar(const Vector& reference, const std::vector<Vector>& errors,
                           const std::filesystem::path& path, const std::string& title) {
  write_text_file(path, errorbar_svg(reference, errors, title));
  return whisker_stats(errors);
}

}  // namespace specrank

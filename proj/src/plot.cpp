#include "dpc/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dpc {

namespace {

// Tableau/Kelly-style palette without reds or grays.
constexpr std::array<const char*, 18> kPalette{
    "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf", "#bcbd22",
    "#8c564b", "#e377c2", "#1a237e", "#004d40", "#f9a825", "#6a1b9a",
    "#00838f", "#558b2f", "#ad8a00", "#283593", "#4e342e", "#0277bd"};

std::string hsl_hex(double hue, double sat, double light) {
  const double c = (1 - std::abs(2 * light - 1)) * sat;
  const double hp = hue / 60.0;
  const double x = c * (1 - std::abs(std::fmod(hp, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  if (hp < 1) r = c, g = x;
  else if (hp < 2) r = x, g = c;
  else if (hp < 3) g = c, b = x;
  else if (hp < 4) g = x, b = c;
  else if (hp < 5) r = x, b = c;
  else r = c, b = x;
  const double m = light - c / 2;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
                static_cast<int>(std::lround((g + m) * 255)),
                static_cast<int>(std::lround((b + m) * 255)));
  return buf;
}

}  // namespace

std::string cluster_color(int label) {
  if (label < 0) return kNoiseColor;
  const auto idx = static_cast<std::size_t>(label);
  if (idx < kPalette.size()) return kPalette[idx];
  // Golden-angle hues kept away from red (|hue| < 25 degrees).
  const std::size_t k = idx - kPalette.size();
  const double hue = 25.0 + std::fmod(static_cast<double>(k) * 137.508, 310.0);
  const double light = 0.35 + 0.1 * static_cast<double>((k / 7) % 3);
  return hsl_hex(hue, 0.65, light);
}

std::string scatter_svg(const Dataset& ds, const ClusterAssignment& asg,
                        const PlotOptions& options) {
  const std::size_t n = ds.size();
  const bool has_y = ds.dim >= 2;
  auto coord = [&](std::size_t i, std::size_t j) { return j < ds.dim ? ds.at(i, j) : 0.0; };

  double x0 = coord(0, 0), x1 = x0, y0 = coord(0, 1), y1 = y0;
  for (std::size_t i = 1; i < n; ++i) {
    x0 = std::min(x0, coord(i, 0));
    x1 = std::max(x1, coord(i, 0));
    y0 = std::min(y0, coord(i, 1));
    y1 = std::max(y1, coord(i, 1));
  }
  const double margin = 16.0;
  const double w = options.width - 2 * margin, h = options.height - 2 * margin;
  const double sx = x1 > x0 ? w / (x1 - x0) : 0.0;
  const double sy = y1 > y0 ? h / (y1 - y0) : 0.0;
  auto px = [&](std::size_t i) { return margin + (x1 > x0 ? (coord(i, 0) - x0) * sx : w / 2); };
  auto py = [&](std::size_t i) {
    return options.height - margin - (y1 > y0 ? (coord(i, 1) - y0) * sy : h / 2);
  };

  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty())
    out << "<text x=\"" << margin << "\" y=\"12\" font-size=\"11\" font-family=\"sans-serif\">"
        << options.title << "</text>\n";
  if (ds.dim != 2)
    out << "<text x=\"" << margin << "\" y=\"" << options.height - 4
        << "\" font-size=\"9\" font-family=\"sans-serif\">"
        << (has_y ? "first two of " + std::to_string(ds.dim) + " features shown"
                  : std::string("single feature on x axis"))
        << "</text>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i < asg.labels.size() ? asg.labels[i] : kNoise;
    out << "<circle class=\"pt\" cx=\"" << px(i) << "\" cy=\"" << py(i) << "\" r=\"2.5\" fill=\""
        << cluster_color(label) << "\"/>\n";
  }
  for (auto c : asg.centers_used) {
    if (c >= n) continue;
    out << "<circle class=\"center\" cx=\"" << px(c) << "\" cy=\"" << py(c)
        << "\" r=\"4.5\" fill=\"" << kCenterColor << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void emit_scatter(const Dataset& ds, const ClusterAssignment& asg,
                  const std::filesystem::path& out, const PlotOptions& options) {
  std::ofstream file(out, std::ios::binary);
  if (!file) throw DatasetError("cannot write " + out.string());
  file << scatter_svg(ds, asg, options);
  if (!file) throw DatasetError("write failed: " + out.string());
}

}  // namespace dpc

#pragma once

#include <filesystem>
#include <string>

#include "dpc/assignment.hpp"
#include "dpc/dataset.hpp"

namespace dpc {

struct PlotOptions {
  int width = 480;
  int height = 480;
  std::string title;
};

inline constexpr const char* kNoiseColor = "#9e9e9e";
inline constexpr const char* kCenterColor = "#ff0000";

/// Fill color for cluster `label` (never the noise gray or center red).
std::string cluster_color(int label);

/// Standalone SVG scatter of the first two features. Points are
/// <circle class="pt">, centers are overdrawn as <circle class="center">.
std::string scatter_svg(const Dataset& ds, const ClusterAssignment& asg,
                        const PlotOptions& options = {});

/// Writes scatter_svg to `out`; throws DatasetError if the file cannot be written.
void emit_scatter(const Dataset& ds, const ClusterAssignment& asg,
                  const std::filesystem::path& out, const PlotOptions& options = {});

}  // namespace dpc

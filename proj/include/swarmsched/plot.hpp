#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swarmsched/bench.hpp"

namespace swarmsched {

// One labelled distribution drawn as a box with its points.
struct Series {
  std::string label;
  std::vector<double> values;
};

// Deterministic SVG box plot. Every point is a <circle class="point">
// inside the <rect id="plot-area">. Throws DomainError when no series has
// data.
std::string box_plot_svg(const std::string& title, const std::string& y_label,
                         const std::vector<Series>& series);

// Writes cost.svg and time.svg, plus relative_cost.svg and
// relative_time.svg when both greedy and exact runs are present. Returns
// the files written.
std::vector<std::filesystem::path> emit_plots(const std::vector<BenchRecord>& records,
                                              const std::filesystem::path& out_dir);

}  // namespace swarmsched

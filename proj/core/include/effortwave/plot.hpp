#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "effortwave/dynamics.hpp"
#include "effortwave/haptics.hpp"

namespace effortwave {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Static SVG line chart with a frame, axis extents and a legend.
void write_line_plot_svg(const std::filesystem::path& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         std::span<const PlotSeries> series);

struct PlotSet {
    std::vector<PlotSeries> force_magnitudes;  // one per joint
    PlotSeries effort;
    PlotSeries envelope;
    std::vector<std::filesystem::path> files;
};

/// Writes force_magnitude.svg, effort.svg and envelope.svg into `dir`.
/// `effort` and `envelope` are aligned with `forces.times`. Throws
/// Error{Validation} when the valid range is empty.
PlotSet emit_plots(const JointForceTrace& forces, const EffortSignal& effort,
                   std::span<const double> envelope, const std::filesystem::path& dir);

}  // namespace effortwave

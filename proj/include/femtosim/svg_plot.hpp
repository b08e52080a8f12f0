#pragma once

#include <string>
#include <vector>

#include "femtosim/csv.hpp"

namespace femtosim {

enum class PlotMetric { SnirDb, ThroughputBps };

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    PlotMetric metric = PlotMetric::SnirDb;
};

// Renders the proposed and existing series of the chosen metric as a
// self-contained SVG. A pure function of its inputs, so repeated renders
// are byte-identical. Throws std::runtime_error when rows is empty.
std::string render_curve_svg(const std::vector<CurveRow>& rows,
                             const PlotSpec& spec);

}  // namespace femtosim

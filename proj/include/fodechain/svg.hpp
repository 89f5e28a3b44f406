#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fodechain::svg {

/// One named series of (x, y) samples, drawn as a polyline or as dots.
struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool points_only = false;
    std::string color = "#1f77b4";
};

/// Minimal static scatter/line plot: axes, ticks, series, labels.
void write_plot(std::ostream& out, const std::vector<Series>& series,
                const std::string& x_label, const std::string& y_label,
                const std::string& title);

} // namespace fodechain::svg

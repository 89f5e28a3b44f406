#include "fodechain/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace fodechain::svg {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finalize() {
        if (!(lo < hi)) { // empty or degenerate, widen to something drawable
            const double mid = std::isfinite(lo) ? lo : 0.0;
            lo = mid - 1.0;
            hi = mid + 1.0;
        }
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

} // namespace

void write_plot(std::ostream& out, const std::vector<Series>& series,
                const std::string& x_label, const std::string& y_label,
                const std::string& title) {
    Range rx, ry;
    for (const auto& s : series) {
        for (double v : s.x) {
            rx.include(v);
        }
        for (double v : s.y) {
            ry.include(v);
        }
    }
    rx.finalize();
    ry.finalize();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double v) { return kMarginLeft + (v - rx.lo) / (rx.hi - rx.lo) * plot_w; };
    auto sy = [&](double v) { return kMarginTop + (ry.hi - v) / (ry.hi - ry.lo) * plot_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / 5.0;
        const double px = sx(fx);
        out << "<line x1=\"" << px << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px
            << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(fx) << "</text>\n";
        const double fy = ry.lo + (ry.hi - ry.lo) * i / 5.0;
        const double py = sy(fy);
        out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kMarginLeft
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fy)
            << "</text>\n";
    }

    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << kMarginTop + plot_h / 2 << ")\">" << y_label
        << "</text>\n";

    double legend_y = kMarginTop + 8;
    for (const auto& s : series) {
        if (s.points_only) {
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                out << "<circle cx=\"" << sx(s.x[i]) << "\" cy=\"" << sy(s.y[i])
                    << "\" r=\"1.6\" fill=\"" << s.color << "\"/>\n";
            }
        } else if (!s.x.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.2\" points=\"";
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                out << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
            }
            out << "\"/>\n";
        }
        if (!s.label.empty()) {
            out << "<rect x=\"" << kMarginLeft + plot_w - 130 << "\" y=\"" << legend_y - 8
                << "\" width=\"10\" height=\"10\" fill=\"" << s.color << "\"/>\n"
                << "<text x=\"" << kMarginLeft + plot_w - 115 << "\" y=\"" << legend_y + 1
                << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
            legend_y += 16;
        }
    }
    out << "</svg>\n";
}

} // namespace fodechain::svg

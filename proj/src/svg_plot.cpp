#include "femtosim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace femtosim {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 770.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 430.0;

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double nice_step(double range, int target_ticks) {
    const double raw = range / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double step = 10.0;
    if (norm <= 1.0) {
        step = 1.0;
    } else if (norm <= 2.0) {
        step = 2.0;
    } else if (norm <= 5.0) {
        step = 5.0;
    }
    return step * mag;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    double scale(double v, double px_lo, double px_hi) const {
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

Range padded(double lo, double hi, double fraction) {
    if (lo == hi) return Range{lo - 1.0, hi + 1.0};
    const double pad = (hi - lo) * fraction;
    return Range{lo - pad, hi + pad};
}

void polyline(std::string& out, const std::vector<CurveRow>& rows,
              double (*pick)(const CurveRow&), const Range& xr,
              const Range& yr, const char* color, const char* dash) {
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"2\"";
    if (dash[0] != '\0') {
        out += " stroke-dasharray=\"";
        out += dash;
        out += "\"";
    }
    out += " points=\"";
    bool first = true;
    for (const CurveRow& r : rows) {
        if (!first) out += " ";
        first = false;
        out += coord(xr.scale(r.sweep_value, kLeft, kRight));
        out += ",";
        out += coord(yr.scale(pick(r), kBottom, kTop));
    }
    out += "\"/>\n";
    for (const CurveRow& r : rows) {
        out += "<circle cx=\"" + coord(xr.scale(r.sweep_value, kLeft, kRight)) +
               "\" cy=\"" + coord(yr.scale(pick(r), kBottom, kTop)) +
               "\" r=\"3\" fill=\"";
        out += color;
        out += "\"/>\n";
    }
}

}  // namespace

std::string render_curve_svg(const std::vector<CurveRow>& rows,
                             const PlotSpec& spec) {
    if (rows.empty()) {
        throw std::runtime_error("plot: no data rows");
    }
    const bool snir = spec.metric == PlotMetric::SnirDb;
    double (*proposed)(const CurveRow&) =
        snir ? +[](const CurveRow& r) { return r.proposed_snir_db; }
             : +[](const CurveRow& r) { return r.proposed_throughput_bps; };
    double (*existing)(const CurveRow&) =
        snir ? +[](const CurveRow& r) { return r.existing_snir_db; }
             : +[](const CurveRow& r) { return r.existing_throughput_bps; };

    double xlo = rows.front().sweep_value;
    double xhi = xlo;
    double ylo = proposed(rows.front());
    double yhi = ylo;
    for (const CurveRow& r : rows) {
        xlo = std::min(xlo, r.sweep_value);
        xhi = std::max(xhi, r.sweep_value);
        for (double v : {proposed(r), existing(r)}) {
            ylo = std::min(ylo, v);
            yhi = std::max(yhi, v);
        }
    }
    const Range xr = padded(xlo, xhi, 0.02);
    const Range yr = padded(ylo, yhi, 0.08);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
           "height=\"500\" viewBox=\"0 0 800 500\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" "
           "fill=\"white\"/>\n";
    out += "<text x=\"" + coord(kWidth / 2) +
           "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"18\">" +
           spec.title + "</text>\n";

    const double xstep = nice_step(xr.hi - xr.lo, 8);
    for (double v = std::ceil(xr.lo / xstep) * xstep; v <= xr.hi + 1e-12;
         v += xstep) {
        const double px = xr.scale(v, kLeft, kRight);
        out += "<line x1=\"" + coord(px) + "\" y1=\"" + coord(kTop) +
               "\" x2=\"" + coord(px) + "\" y2=\"" + coord(kBottom) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + coord(px) + "\" y=\"" + coord(kBottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">" +
               label(v + 0.0) + "</text>\n";
    }
    const double ystep = nice_step(yr.hi - yr.lo, 6);
    for (double v = std::ceil(yr.lo / ystep) * ystep; v <= yr.hi + 1e-12;
         v += ystep) {
        const double py = yr.scale(v, kBottom, kTop);
        out += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(py) +
               "\" x2=\"" + coord(kRight) + "\" y2=\"" + coord(py) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + coord(kLeft - 8) + "\" y=\"" + coord(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"12\">" +
               label(v + 0.0) + "</text>\n";
    }

    out += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kBottom) +
           "\" x2=\"" + coord(kRight) + "\" y2=\"" + coord(kBottom) +
           "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kTop) +
           "\" x2=\"" + coord(kLeft) + "\" y2=\"" + coord(kBottom) +
           "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    polyline(out, rows, proposed, xr, yr, "#1f77b4", "");
    polyline(out, rows, existing, xr, yr, "#d62728", "7 4");

    out += "<text x=\"" + coord((kLeft + kRight) / 2) + "\" y=\"" +
           coord(kBottom + 45) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" +
           spec.x_label + "</text>\n";
    out += "<text x=\"24\" y=\"" + coord((kTop + kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\" transform=\"rotate(-90 24 " +
           coord((kTop + kBottom) / 2) + ")\">" + spec.y_label + "</text>\n";

    const double lx = kLeft + 16;
    const double ly = kTop + 12;
    out += "<line x1=\"" + coord(lx) + "\" y1=\"" + coord(ly) + "\" x2=\"" +
           coord(lx + 34) + "\" y2=\"" + coord(ly) +
           "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + coord(lx + 42) + "\" y=\"" + coord(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"13\">on-demand "
           "activation</text>\n";
    out += "<line x1=\"" + coord(lx) + "\" y1=\"" + coord(ly + 20) +
           "\" x2=\"" + coord(lx + 34) + "\" y2=\"" + coord(ly + 20) +
           "\" stroke=\"#d62728\" stroke-width=\"2\" "
           "stroke-dasharray=\"7 4\"/>\n";
    out += "<text x=\"" + coord(lx + 42) + "\" y=\"" + coord(ly + 24) +
           "\" font-family=\"sans-serif\" font-size=\"13\">always-on "
           "baseline</text>\n";

    out += "</svg>\n";
    return out;
}

}  // namespace femtosim

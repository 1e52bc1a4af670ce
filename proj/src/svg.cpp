#include "rcsgate/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rcsgate/error.hpp"

namespace rcsgate::svg {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// 1-2-5 step giving roughly `target` intervals over [lo, hi].
double nice_step(double lo, double hi, int target) {
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

std::pair<double, double> finite_range(const std::vector<Series>& series, bool use_x) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            const double v = use_x ? s.x[i] : s.y[i];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!std::isfinite(lo)) return {0.0, 1.0};
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) return {lo - 1.0, hi + 1.0};
    return {lo, hi};
}

}  // namespace

std::string render(const LinePlot& plot) {
    if (plot.series.empty() || plot.series.size() > 2)
        throw Error(Errc::InvalidArgument, "a plot holds one or two series");
    for (const auto& s : plot.series)
        if (s.x.size() != s.y.size()) throw Error(Errc::LengthMismatch, "series '" + s.label + "' has mismatched x/y");

    const auto [x0, x1] = finite_range(plot.series, true);
    auto [y0, y1] = plot.y_range ? *plot.y_range : finite_range(plot.series, false);
    if (!plot.y_range) {
        const double step = nice_step(y0, y1, 8);
        y0 = std::floor(y0 / step) * step;
        y1 = std::ceil(y1 / step) * step;
    }

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    const auto py = [&](double y) { return kTop + (1.0 - (std::clamp(y, y0, y1) - y0) / (y1 - y0)) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
           escape(plot.title) + "</text>\n";

    const double xs = nice_step(x0, x1, 10);
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
        out += "<line x1=\"" + num(px(t)) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(px(t)) + "\" y2=\"" +
               num(kTop + ph) + "\" stroke=\"#ddd\"/>\n";
        out += "<text x=\"" + num(px(t)) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" +
               tick_label(t) + "</text>\n";
    }
    const double ys = nice_step(y0, y1, 8);
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
        out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" +
               num(py(t)) + "\" stroke=\"#ddd\"/>\n";
        out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" +
               tick_label(t) + "</text>\n";
    }
    out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 16) + "\" text-anchor=\"middle\">" +
           escape(plot.x_label) + "</text>\n";
    out += "<text transform=\"translate(20," + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
           escape(plot.y_label) + "</text>\n";

    for (std::size_t si = 0; si < plot.series.size(); ++si) {
        const auto& s = plot.series[si];
        std::string path;
        bool pen_down = false;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                pen_down = false;
                continue;
            }
            path += (pen_down ? "L" : "M") + num(px(s.x[i])) + "," + num(py(s.y[i]));
            pen_down = true;
        }
        out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + kColors[si] + "\" stroke-width=\"1.5\"/>\n";
        const double ly = kTop + 16 + 16.0 * static_cast<double>(si);
        out += "<line x1=\"" + num(kLeft + pw - 140) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(kLeft + pw - 115) +
               "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + kColors[si] + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(kLeft + pw - 110) + "\" y=\"" + num(ly) + "\">" + escape(s.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace rcsgate::svg

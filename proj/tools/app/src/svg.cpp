// svg.cpp — SVG line plots with linear or logarithmic axes.

#include "rcpt/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rcpt::app {

namespace {

constexpr double kPanelW = 440.0, kPanelH = 320.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 34.0, kBottom = 48.0;
constexpr double kHeader = 36.0;

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string esc(const std::string& s) {
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

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

struct Axis {
    bool log{false};
    double lo{0.0}, hi{1.0};   // in transformed units (log10 if log)
    std::vector<double> ticks; // transformed units

    double map(double v) const { return log ? std::log10(v) : v; }
    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
    std::string tick_label(double t) const {
        if (!log) return num(std::abs(t) < 1e-12 * std::max(1.0, hi - lo) ? 0.0 : t);
        const int e = static_cast<int>(std::lround(t));
        if (e == 0) return "1";
        if (e == 1) return "10";
        return "1e" + std::to_string(e);
    }
};

Axis make_axis(bool log, double lo, double hi) {
    Axis a;
    a.log = log;
    if (!(lo <= hi)) {
        lo = log ? 0.0 : 0.0;
        hi = 1.0;
    }
    if (log) {
        lo = std::floor(lo);
        hi = std::ceil(hi);
        if (hi <= lo) hi = lo + 1.0;
        const double span = hi - lo;
        const double step = std::max(1.0, std::ceil(span / 8.0));
        for (double t = lo; t <= hi + 1e-9; t += step) a.ticks.push_back(t);
    } else {
        if (hi - lo < 1e-300) {
            const double pad = std::max(std::abs(lo) * 0.1, 1e-3);
            lo -= pad;
            hi += pad;
        }
        const double raw = (hi - lo) / 6.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        lo = std::floor(lo / step) * step;
        hi = std::ceil(hi / step) * step;
        for (double t = lo; t <= hi + 0.5 * step; t += step) a.ticks.push_back(t);
    }
    a.lo = lo;
    a.hi = hi;
    return a;
}

void render_panel(std::ostringstream& os, const Panel& p, double ox, double oy) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    Axis probe_x, probe_y;
    probe_x.log = p.xlog;
    probe_y.log = p.ylog;
    for (const auto& s : p.series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!probe_x.usable(s.x[i]) || !probe_y.usable(s.y[i])) continue;
            xlo = std::min(xlo, probe_x.map(s.x[i]));
            xhi = std::max(xhi, probe_x.map(s.x[i]));
            ylo = std::min(ylo, probe_y.map(s.y[i]));
            yhi = std::max(yhi, probe_y.map(s.y[i]));
        }
    for (const auto& m : p.vlines)
        if (probe_x.usable(m.x)) {
            xlo = std::min(xlo, probe_x.map(m.x));
            xhi = std::max(xhi, probe_x.map(m.x));
        }
    const Axis ax = make_axis(p.xlog, xlo, xhi);
    const Axis ay = make_axis(p.ylog, ylo, yhi);

    const double x0 = ox + kLeft, x1 = ox + kPanelW - kRight;
    const double y0 = oy + kPanelH - kBottom, y1 = oy + kTop;
    auto px = [&](double v) { return x0 + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * (x1 - x0); };
    auto py = [&](double v) { return y0 - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * (y0 - y1); };
    auto tx = [&](double t) { return x0 + (t - ax.lo) / (ax.hi - ax.lo) * (x1 - x0); };
    auto ty = [&](double t) { return y0 - (t - ay.lo) / (ay.hi - ay.lo) * (y0 - y1); };

    os << "<g>\n";
    os << "<text x=\"" << num(ox + kPanelW / 2) << "\" y=\"" << num(oy + 20)
       << "\" text-anchor=\"middle\" font-size=\"13\">" << esc(p.title) << "</text>\n";
    os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0) << "\" height=\""
       << num(y0 - y1) << "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (double t : ax.ticks) {
        os << "<line x1=\"" << num(tx(t)) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(tx(t)) << "\" y2=\"" << num(y1)
           << "\" stroke=\"#e6e6e6\"/>\n";
        os << "<text x=\"" << num(tx(t)) << "\" y=\"" << num(y0 + 15) << "\" text-anchor=\"middle\" font-size=\"10\">"
           << esc(ax.tick_label(t)) << "</text>\n";
    }
    for (double t : ay.ticks) {
        os << "<line x1=\"" << num(x0) << "\" y1=\"" << num(ty(t)) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(ty(t))
           << "\" stroke=\"#e6e6e6\"/>\n";
        os << "<text x=\"" << num(x0 - 5) << "\" y=\"" << num(ty(t) + 3) << "\" text-anchor=\"end\" font-size=\"10\">"
           << esc(ay.tick_label(t)) << "</text>\n";
    }
    os << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(y0 + 34) << "\" text-anchor=\"middle\" font-size=\"12\">"
       << esc(p.xlabel) << "</text>\n";
    os << "<text transform=\"translate(" << num(ox + 16) << "," << num((y0 + y1) / 2)
       << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << esc(p.ylabel) << "</text>\n";

    for (const auto& m : p.vlines) {
        if (!ax.usable(m.x)) continue;
        os << "<line x1=\"" << num(px(m.x)) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px(m.x)) << "\" y2=\""
           << num(y1) << "\" stroke=\"" << m.color << "\" stroke-dasharray=\"4,3\"/>\n";
        os << "<text x=\"" << num(px(m.x) + 3) << "\" y=\"" << num(y1 + 12) << "\" font-size=\"10\" fill=\"" << m.color
           << "\">" << esc(m.label) << "</text>\n";
    }

    int k = 0;
    double ly = y1 + 14;
    for (const auto& s : p.series) {
        const std::string color = s.color.empty() ? kPalette[k % 10] : s.color;
        ++k;
        std::ostringstream path;
        bool pen = false;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) {
                pen = false;
                continue;
            }
            path << (pen ? " L" : " M") << num(px(s.x[i])) << ' ' << num(py(s.y[i]));
            pen = true;
        }
        os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
           << (s.dashed ? " stroke-dasharray=\"6,3\"" : "") << "/>\n";
        if (!s.label.empty()) {
            os << "<line x1=\"" << num(x1 - 110) << "\" y1=\"" << num(ly - 3) << "\" x2=\"" << num(x1 - 92) << "\" y2=\""
               << num(ly - 3) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
               << (s.dashed ? " stroke-dasharray=\"6,3\"" : "") << "/>\n";
            os << "<text x=\"" << num(x1 - 88) << "\" y=\"" << num(ly) << "\" font-size=\"10\">" << esc(s.label)
               << "</text>\n";
            ly += 12;
        }
    }
    os << "</g>\n";
}

} // namespace

std::string render_svg(const Plot& plot) {
    const int cols = std::max(1, std::min<int>(plot.columns, static_cast<int>(plot.panels.size())));
    const int rows = (static_cast<int>(plot.panels.size()) + cols - 1) / cols;
    const double w = cols * kPanelW, h = kHeader + rows * kPanelH;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
       << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\" font-family=\"sans-serif\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
    os << "<text x=\"" << num(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << esc(plot.title)
       << "</text>\n";
    for (std::size_t i = 0; i < plot.panels.size(); ++i) {
        const double ox = static_cast<double>(i % cols) * kPanelW;
        const double oy = kHeader + static_cast<double>(i / cols) * kPanelH;
        render_panel(os, plot.panels[i], ox, oy);
    }
    os << "</svg>\n";
    return os.str();
}

void write_svg(const std::filesystem::path& file, const Plot& plot) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << render_svg(plot);
}

} // namespace rcpt::app

// svg.hpp — Minimal multi-panel line plots written as standalone SVG.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rcpt::app {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color;   // empty = next palette colour
    bool dashed{false};
};

struct Marker {
    double x{0.0};
    std::string label;
    std::string color{"#555555"};
};

struct Panel {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool xlog{false};
    bool ylog{false};
    std::vector<Series> series;
    std::vector<Marker> vlines;
};

struct Plot {
    std::string title;
    int columns{2};
    std::vector<Panel> panels;
};

// Points that cannot be shown (non-finite, or <= 0 on a log axis) are dropped.
std::string render_svg(const Plot& plot);
void write_svg(const std::filesystem::path& file, const Plot& plot);

} // namespace rcpt::app

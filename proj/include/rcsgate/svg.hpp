#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rcsgate::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;  // non-finite points break the line
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;  // at most two
    std::optional<std::pair<double, double>> y_range;
};

std::string render(const LinePlot& plot);

}  // namespace rcsgate::svg

#pragma once

#include <string>
#include <string_view>

namespace rcsgate::units {

/// "27ns", "1.5 ns", "2.8e-8", "28e-9s". Bare numbers are seconds.
double parse_time(std::string_view literal);

/// "18GHz", "32e9", "100 MHz". Bare numbers are hertz.
double parse_frequency(std::string_view literal);

/// "18GHz", "32.5GHz", "750MHz": short label used in output file names.
std::string frequency_label(double hz);

}  // namespace rcsgate::units

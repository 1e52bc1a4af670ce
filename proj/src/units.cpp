#include "rcsgate/units.hpp"

#include <array>
#include <cmath>
#include <span>
#include <utility>

#include "rcsgate/error.hpp"
#include "rcsgate/text.hpp"

namespace rcsgate::units {
namespace {

using Suffix = std::pair<std::string_view, double>;

double parse_with_suffix(std::string_view literal, std::span<const Suffix> suffixes, std::string_view what) {
    const std::string lower = text::to_lower(text::trim(literal));
    std::string_view body = lower;
    double scale = 1.0;
    for (const auto& [suffix, factor] : suffixes) {
        if (body.size() > suffix.size() && body.ends_with(suffix)) {
            body.remove_suffix(suffix.size());
            scale = factor;
            break;
        }
    }
    const auto value = text::parse_double(body);
    if (!value || !std::isfinite(*value))
        throw Error(Errc::InvalidArgument, "cannot parse " + std::string(what) + " '" + std::string(literal) + "'");
    return *value * scale;
}

// Longest suffix first so "ns" is not read as "s".
constexpr std::array<Suffix, 5> kTimeSuffixes{{{"ps", 1e-12}, {"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}}};
constexpr std::array<Suffix, 4> kFreqSuffixes{{{"ghz", 1e9}, {"mhz", 1e6}, {"khz", 1e3}, {"hz", 1.0}}};

}  // namespace

double parse_time(std::string_view literal) { return parse_with_suffix(literal, kTimeSuffixes, "time"); }

double parse_frequency(std::string_view literal) { return parse_with_suffix(literal, kFreqSuffixes, "frequency"); }

std::string frequency_label(double hz) {
    auto trimmed = [](double v) {
        std::string s = text::format_double(v);
        if (s.ends_with(".0")) s.resize(s.size() - 2);
        return s;
    };
    if (std::abs(hz) >= 1e9) return trimmed(hz / 1e9) + "GHz";
    if (std::abs(hz) >= 1e6) return trimmed(hz / 1e6) + "MHz";
    if (std::abs(hz) >= 1e3) return trimmed(hz / 1e3) + "kHz";
    return trimmed(hz) + "Hz";
}

}  // namespace rcsgate::units

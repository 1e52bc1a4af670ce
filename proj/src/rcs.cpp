#include "rcsgate/rcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rcsgate/error.hpp"
#include "rcsgate/text.hpp"

namespace rcsgate {
namespace {

void require_same_grid(const FrequencySweep& a, const FrequencySweep& b) {
    if (!(a.grid() == b.grid()))
        throw Error(Errc::GridMismatch, "DUT and reference sweeps are on different frequency grids");
}

// + 0.0 folds -0.0 into +0.0.
double quantize(double level) { return std::round(level / kPatternQuantum) * kPatternQuantum + 0.0; }

}  // namespace

std::vector<double> magnitude_db(const FrequencySweep& sweep) {
    std::vector<double> out(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) out[i] = 20.0 * std::log10(std::abs(sweep[i]));
    return out;
}

std::vector<double> rcsr_spectrum(const FrequencySweep& dut_gated, const FrequencySweep& ref_gated) {
    require_same_grid(dut_gated, ref_gated);
    std::vector<double> out(dut_gated.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double ref = std::abs(ref_gated[i]);
        if (ref == 0.0)
            throw Error(Errc::ReferenceNull,
                        "reference magnitude is zero at " + text::format_double(ref_gated.grid().frequency(i)) + " Hz");
        out[i] = 20.0 * std::log10(std::abs(dut_gated[i])) - 20.0 * std::log10(ref);
    }
    return out;
}

AngleCut make_cut(double theta_deg, FrequencySweep dut_gated, FrequencySweep ref_gated) {
    if (!std::isfinite(theta_deg) || theta_deg < 1.0 || theta_deg > 90.0)
        throw Error(Errc::InvalidArgument, "cut angle " + text::format_double(theta_deg) + " outside [1, 90] degrees");
    auto rcsr = rcsr_spectrum(dut_gated, ref_gated);
    return {theta_deg, std::move(dut_gated), std::move(ref_gated), std::move(rcsr)};
}

double sample_at(std::span<const double> spectrum, const FrequencyGrid& grid, double f0) {
    if (spectrum.size() != grid.size())
        throw Error(Errc::LengthMismatch, "spectrum length does not match its grid");
    if (!std::isfinite(f0) || !grid.contains(f0))
        throw Error(Errc::OutOfBand, text::format_double(f0) + " Hz is outside [" + text::format_double(grid.start()) +
                                         ", " + text::format_double(grid.stop()) + "] Hz");
    const double pos = std::clamp((f0 - grid.start()) / grid.spacing(), 0.0, static_cast<double>(grid.size() - 1));
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9) return spectrum[static_cast<std::size_t>(nearest)];
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    return spectrum[i] + frac * (spectrum[i + 1] - spectrum[i]);
}

std::string_view to_string(PatternSource source) noexcept {
    switch (source) {
        case PatternSource::Dut: return "dut";
        case PatternSource::Ref: return "ref";
        case PatternSource::Rcsr: return "rcsr";
    }
    return "dut";
}

PatternSource parse_pattern_source(std::string_view name) {
    const std::string lower = text::to_lower(name);
    if (lower == "dut") return PatternSource::Dut;
    if (lower == "ref") return PatternSource::Ref;
    if (lower == "rcsr") return PatternSource::Rcsr;
    throw Error(Errc::InvalidArgument, "pattern source must be dut, ref or rcsr, got '" + std::string(name) + "'");
}

BistaticPattern assemble_pattern(std::span<const AngleCut> cuts, double f0, PatternSource source) {
    if (cuts.empty()) throw Error(Errc::InvalidArgument, "pattern needs at least one angle");

    std::vector<PatternEntry> raw;
    raw.reserve(cuts.size());
    for (const auto& cut : cuts) {
        if (!std::isfinite(cut.theta_deg) || cut.theta_deg < 1.0 || cut.theta_deg > 90.0)
            throw Error(Errc::InvalidArgument, "cut angle " + text::format_double(cut.theta_deg) + " outside [1, 90]");
        double level = 0.0;
        switch (source) {
            case PatternSource::Dut: level = sample_at(magnitude_db(cut.dut_gated), cut.grid(), f0); break;
            case PatternSource::Ref: level = sample_at(magnitude_db(cut.ref_gated), cut.grid(), f0); break;
            case PatternSource::Rcsr: level = sample_at(cut.rcsr_db, cut.grid(), f0); break;
        }
        raw.push_back({cut.theta_deg, level});
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.theta_deg < b.theta_deg; });
    for (std::size_t i = 1; i < raw.size(); ++i)
        if (raw[i].theta_deg == raw[i - 1].theta_deg)
            throw Error(Errc::DuplicateAngle, "angle " + text::format_double(raw[i].theta_deg) + " appears twice");

    const auto peak = std::max_element(raw.begin(), raw.end(),
                                       [](const auto& a, const auto& b) { return a.level_db < b.level_db; });
    if (!std::isfinite(peak->level_db))
        throw Error(Errc::InvalidArgument, "pattern at " + text::format_double(f0) + " Hz has no finite level");

    BistaticPattern pattern;
    pattern.f0 = f0;
    pattern.source = source;
    pattern.reference_level_db = peak->level_db;
    pattern.reference_theta_deg = peak->theta_deg;
    pattern.entries.resize(2 * raw.size());
    const std::size_t n = raw.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double level = quantize(raw[i].level_db - peak->level_db);
        pattern.entries[n + i] = {raw[i].theta_deg, level};
        pattern.entries[n - 1 - i] = {-raw[i].theta_deg, level};
    }
    return pattern;
}

}  // namespace rcsgate

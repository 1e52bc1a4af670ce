#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "rcsgate/sweep.hpp"

namespace rcsgate {

/// One bistatic angle after gating.
struct AngleCut {
    double theta_deg = 0.0;
    FrequencySweep dut_gated;
    FrequencySweep ref_gated;
    std::vector<double> rcsr_db;

    const FrequencyGrid& grid() const noexcept { return ref_gated.grid(); }
};

/// Builds a cut and its RCSR spectrum; theta must lie in [1, 90].
AngleCut make_cut(double theta_deg, FrequencySweep dut_gated, FrequencySweep ref_gated);

/// Pointwise 20·log10(|dut| / |ref|) in dB; negative means reduction.
std::vector<double> rcsr_spectrum(const FrequencySweep& dut_gated, const FrequencySweep& ref_gated);

/// 20·log10|s| per grid point.
std::vector<double> magnitude_db(const FrequencySweep& sweep);

/// Linear interpolation of a per-grid-point spectrum at f0; exact on grid points.
double sample_at(std::span<const double> spectrum, const FrequencyGrid& grid, double f0);

enum class PatternSource { Dut, Ref, Rcsr };

std::string_view to_string(PatternSource source) noexcept;
PatternSource parse_pattern_source(std::string_view name);

struct PatternEntry {
    double theta_deg;
    double level_db;
};

/// Normalised bistatic pattern at one frequency. Entries run from −90° to
/// +90° in ascending order, θ = 0 absent, −θ a copy of +θ.
struct BistaticPattern {
    double f0 = 0.0;
    PatternSource source = PatternSource::Dut;
    std::vector<PatternEntry> entries;
    /// Raw level (before normalisation) of the strongest angle, and that angle.
    double reference_level_db = 0.0;
    double reference_theta_deg = 0.0;
};

/// Normalised levels are quantised to this step (dB).
inline constexpr double kPatternQuantum = 1e-9;

BistaticPattern assemble_pattern(std::span<const AngleCut> cuts, double f0, PatternSource source);

}  // namespace rcsgate

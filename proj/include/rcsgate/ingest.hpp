#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "rcsgate/sweep.hpp"

namespace rcsgate {

/// Numeric pair layout of a Touchstone data row.
enum class TouchstoneFormat {
    RealImag,      // RI
    MagAngle,      // MA, angle in degrees
    DecibelAngle,  // DB, 20·log10|s| and angle in degrees
};

/// Relative tolerance on the point-to-point frequency spacing.
inline constexpr double kGridTolerance = 1e-6;

/// Parses a 1-port Touchstone v1 file. The option line is mandatory;
/// missing option tokens take the Touchstone defaults (GHz, S, MA, R 50).
FrequencySweep parse_touchstone(std::string_view text);

/// Emits a 1-port Touchstone v1 file with a '!' provenance header. Frequencies
/// are written in Hz with round-trip precision.
std::string write_touchstone(const FrequencySweep& sweep, TouchstoneFormat format = TouchstoneFormat::RealImag);

/// Parses "freq_hz,re,im" CSV under the same grid contract as Touchstone.
FrequencySweep parse_csv(std::string_view text);
std::string write_csv(const FrequencySweep& sweep);

/// Merges per-band sweeps onto one uniform grid. Overlapping points are
/// averaged; the result does not depend on the input order.
FrequencySweep stitch_bands(std::span<const FrequencySweep> bands);

/// Reads a sweep file, dispatching on extension (.s1p/.snp-style vs .csv).
FrequencySweep load_sweep(const std::filesystem::path& path);
void save_sweep(const std::filesystem::path& path, const FrequencySweep& sweep,
                TouchstoneFormat format = TouchstoneFormat::RealImag);

/// Shared validation for parsers: builds the sweep from raw (frequency, value)
/// rows, checking count, ordering and spacing. `line_numbers` maps rows to
/// source lines for error messages.
FrequencySweep sweep_from_rows(std::span<const double> freqs, std::span<const Complex> values,
                               std::span<const std::size_t> line_numbers);

}  // namespace rcsgate

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcsgate/error.hpp"
#include "rcsgate/ingest.hpp"
#include "rcsgate/manifest.hpp"
#include "rcsgate/sweep.hpp"

namespace rcsgate {

/// Frequency-dependent complex multiplier, piecewise linear in dB and in
/// phase (degrees) between table points, held constant beyond the ends.
struct ReflectivityProfile {
    struct Point {
        double freq_hz;
        double level_db;
        double phase_deg = 0.0;
    };
    std::vector<Point> points;  // strictly increasing freq_hz, non-empty

    Complex at(double freq_hz) const;
};

struct Scatterer {
    double delay = 0.0;  // seconds, >= 0
    Complex amplitude{1.0, 0.0};
    std::optional<ReflectivityProfile> profile;
};

struct Scene {
    std::vector<Scatterer> scatterers;
    /// RMS of the complex noise relative to unit amplitude, in dB; none = no noise.
    std::optional<double> noise_floor_db;
    std::uint64_t seed = 0;
};

/// value(f) = Σ amp·profile(f)·e^{−i2πf·delay} + circular complex Gaussian
/// noise. Noise comes from std::mt19937_64(seed) through Box–Muller (53-bit
/// uniforms u1, u2; z = sqrt(−2 ln(1−u1))·(cos 2πu2, sin 2πu2); each
/// component scaled by σ/√2), one pair per frequency point in grid order.
FrequencySweep simulate_sweep(const Scene& scene, const FrequencyGrid& grid, Diagnostics* diagnostics = nullptr);

/// Angle-dependent scatterer: amplitude·cos(θ)^cos_power.
struct TargetTemplate {
    double delay = 0.0;
    Complex amplitude{1.0, 0.0};
    double cos_power = 0.0;
    std::optional<ReflectivityProfile> profile;

    Scatterer at_angle(double theta_deg) const;
};

/// Synthetic measurement campaign. DUT and reference at one angle share the
/// clutter list exactly; their noise draws are independent.
struct CampaignScript {
    std::vector<double> angles_deg;
    std::vector<TargetTemplate> dut;
    std::vector<TargetTemplate> reference;
    std::vector<Scatterer> clutter;
    std::optional<double> noise_floor_db;
    std::uint64_t seed = 1;

    void validate() const;
    Scene dut_scene(std::size_t angle_index) const;
    Scene reference_scene(std::size_t angle_index) const;
};

/// Seed of the noise stream for one sweep: splitmix64 mixing of the script
/// seed, the angle index and the role (0 = DUT, 1 = reference).
std::uint64_t derive_seed(std::uint64_t base, std::size_t angle_index, unsigned role) noexcept;

/// Clutter cluster at 6–10 ns, unit reference at 28 ns, DUT = Γ(f)·cos θ at
/// 28 ns with Γ falling from −3 dB (10 GHz) to −20 dB (40 GHz), 1°…90°,
/// noise floor −60 dB.
CampaignScript demo_script();

/// JSON script schema (see README).
CampaignScript parse_script(std::string_view json_text);
std::string write_script(const CampaignScript& script);

struct SimulatedAngle {
    double theta_deg;
    FrequencySweep dut;
    FrequencySweep ref;
};

/// In-memory campaign; angles are simulated concurrently.
std::vector<SimulatedAngle> simulate_campaign(const CampaignScript& script, const FrequencyGrid& grid,
                                              Diagnostics* diagnostics = nullptr);

struct GenerateOptions {
    std::size_t bands = 1;  // split each sweep into this many files (one shared point per seam)
    TouchstoneFormat format = TouchstoneFormat::RealImag;
};

/// Writes angle_<deg>/{dut,ref}.s1p (or dut_b<k>.s1p… when banded) and
/// manifest.tsv under out_dir; returns the manifest as written.
CampaignManifest generate_campaign(const CampaignScript& script, const FrequencyGrid& grid,
                                   const std::filesystem::path& out_dir, const GenerateOptions& options = {},
                                   Diagnostics* diagnostics = nullptr);

/// "1", "2.5": the angle token used in directory names.
std::string angle_token(double angle_deg);

}  // namespace rcsgate

#include "rcsgate/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rcsgate/error.hpp"
#include "rcsgate/text.hpp"

namespace fs = std::filesystem;

namespace rcsgate {
namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// e^{−i2πfτ} with the cycle count reduced before scaling by 2π.
Complex delay_phasor(double f, double delay) {
    const double cycles = f * delay;
    const double frac = cycles - std::floor(cycles);
    return std::polar(1.0, -2.0 * std::numbers::pi * frac);
}

void check_scatterer(const Scatterer& s) {
    if (!std::isfinite(s.delay) || s.delay < 0.0) throw Error(Errc::InvalidArgument, "scatterer delay must be >= 0");
    if (!std::isfinite(s.amplitude.real()) || !std::isfinite(s.amplitude.imag()))
        throw Error(Errc::InvalidArgument, "scatterer amplitude must be finite");
}

}  // namespace

Complex ReflectivityProfile::at(double freq_hz) const {
    if (points.empty()) return {1.0, 0.0};
    const auto to_complex = [](double db, double phase_deg) {
        return std::polar(std::pow(10.0, db / 20.0), phase_deg * std::numbers::pi / 180.0);
    };
    if (freq_hz <= points.front().freq_hz) return to_complex(points.front().level_db, points.front().phase_deg);
    if (freq_hz >= points.back().freq_hz) return to_complex(points.back().level_db, points.back().phase_deg);
    const auto hi = std::upper_bound(points.begin(), points.end(), freq_hz,
                                     [](double f, const Point& p) { return f < p.freq_hz; });
    const auto lo = hi - 1;
    const double t = (freq_hz - lo->freq_hz) / (hi->freq_hz - lo->freq_hz);
    return to_complex(lo->level_db + t * (hi->level_db - lo->level_db),
                      lo->phase_deg + t * (hi->phase_deg - lo->phase_deg));
}

FrequencySweep simulate_sweep(const Scene& scene, const FrequencyGrid& grid, Diagnostics* diagnostics) {
    for (const auto& s : scene.scatterers) {
        check_scatterer(s);
        if (diagnostics && s.delay >= grid.alias_span())
            diagnostics->warn("AliasWarning: delay " + text::format_double(s.delay * 1e9) + " ns is beyond the " +
                              text::format_double(grid.alias_span() * 1e9) + " ns alias span and will wrap");
    }

    const std::size_t n = grid.size();
    std::vector<Complex> values(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const double f = grid.frequency(static_cast<std::size_t>(i));
        Complex acc{};
        for (const auto& s : scene.scatterers) {
            Complex a = s.amplitude;
            if (s.profile) a *= s.profile->at(f);
            acc += a * delay_phasor(f, s.delay);
        }
        values[static_cast<std::size_t>(i)] = acc;
    }

    if (scene.noise_floor_db) {
        if (!std::isfinite(*scene.noise_floor_db)) throw Error(Errc::InvalidArgument, "noise floor must be finite");
        const double component_sigma = std::pow(10.0, *scene.noise_floor_db / 20.0) / std::numbers::sqrt2;
        std::mt19937_64 rng(scene.seed);
        for (auto& v : values) {
            const double u1 = uniform53(rng);
            const double u2 = uniform53(rng);
            const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
            const double angle = 2.0 * std::numbers::pi * u2;
            v += component_sigma * Complex(radius * std::cos(angle), radius * std::sin(angle));
        }
    }
    return {grid, std::move(values)};
}

Scatterer TargetTemplate::at_angle(double theta_deg) const {
    double taper = 1.0;
    if (cos_power != 0.0) {
        const double c = std::max(0.0, std::cos(theta_deg * std::numbers::pi / 180.0));
        taper = std::pow(c, cos_power);
    }
    return {delay, amplitude * taper, profile};
}

std::uint64_t derive_seed(std::uint64_t base, std::size_t angle_index, unsigned role) noexcept {
    return splitmix64(base ^ splitmix64(2 * static_cast<std::uint64_t>(angle_index) + role));
}

void CampaignScript::validate() const {
    if (angles_deg.empty()) throw Error(Errc::InvalidScript, "script lists no angles");
    for (std::size_t i = 0; i < angles_deg.size(); ++i) {
        const double a = angles_deg[i];
        if (!std::isfinite(a) || a < 1.0 || a > 90.0)
            throw Error(Errc::InvalidScript, "angle " + text::format_double(a) + " outside [1, 90] degrees");
        if (i > 0 && !(a > angles_deg[i - 1]))
            throw Error(Errc::InvalidScript, "angles must be strictly increasing");
    }
    if (dut.empty() || reference.empty())
        throw Error(Errc::InvalidScript, "script needs at least one DUT and one reference scatterer");
    const auto check_template = [](const TargetTemplate& t) {
        check_scatterer({t.delay, t.amplitude, std::nullopt});
        if (!std::isfinite(t.cos_power) || t.cos_power < 0.0)
            throw Error(Errc::InvalidScript, "cos_power must be >= 0");
        if (t.profile) {
            if (t.profile->points.empty()) throw Error(Errc::InvalidScript, "reflectivity table is empty");
            for (std::size_t i = 1; i < t.profile->points.size(); ++i)
                if (!(t.profile->points[i].freq_hz > t.profile->points[i - 1].freq_hz))
                    throw Error(Errc::InvalidScript, "reflectivity frequencies must increase");
        }
    };
    std::for_each(dut.begin(), dut.end(), check_template);
    std::for_each(reference.begin(), reference.end(), check_template);
    std::for_each(clutter.begin(), clutter.end(), check_scatterer);
    if (noise_floor_db && !std::isfinite(*noise_floor_db)) throw Error(Errc::InvalidScript, "noise floor must be finite");
}

namespace {

Scene build_scene(const CampaignScript& script, const std::vector<TargetTemplate>& targets, std::size_t angle_index,
                  unsigned role) {
    Scene scene;
    const double theta = script.angles_deg.at(angle_index);
    for (const auto& t : targets) scene.scatterers.push_back(t.at_angle(theta));
    scene.scatterers.insert(scene.scatterers.end(), script.clutter.begin(), script.clutter.end());
    scene.noise_floor_db = script.noise_floor_db;
    scene.seed = derive_seed(script.seed, angle_index, role);
    return scene;
}

}  // namespace

Scene CampaignScript::dut_scene(std::size_t angle_index) const { return build_scene(*this, dut, angle_index, 0); }

Scene CampaignScript::reference_scene(std::size_t angle_index) const {
    return build_scene(*this, reference, angle_index, 1);
}

CampaignScript demo_script() {
    CampaignScript script;
    for (int a = 1; a <= 90; ++a) script.angles_deg.push_back(a);
    ReflectivityProfile gamma;
    gamma.points = {{10e9, -3.0, 0.0}, {40e9, -20.0, 0.0}};
    script.reference = {{28e-9, {1.0, 0.0}, 0.0, std::nullopt}};
    script.dut = {{28e-9, {1.0, 0.0}, 1.0, gamma}};
    // antenna side-lobe / chamber clutter cluster
    script.clutter = {
        {6.0e-9, std::polar(0.6, 0.3), std::nullopt},
        {7.2e-9, std::polar(0.4, 2.1), std::nullopt},
        {8.5e-9, std::polar(0.7, -1.2), std::nullopt},
        {10.0e-9, std::polar(0.5, 0.9), std::nullopt},
    };
    script.noise_floor_db = -60.0;
    script.seed = 20230101;
    return script;
}

std::string angle_token(double angle_deg) {
    std::string s = text::format_double(angle_deg);
    if (s.ends_with(".0")) s.resize(s.size() - 2);
    return s;
}

std::vector<SimulatedAngle> simulate_campaign(const CampaignScript& script, const FrequencyGrid& grid,
                                              Diagnostics* diagnostics) {
    script.validate();
    const std::size_t n = script.angles_deg.size();
    std::vector<std::optional<SimulatedAngle>> slots(n);
    std::vector<Diagnostics> diag(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        auto dut = simulate_sweep(script.dut_scene(idx), grid, &diag[idx]);
        auto ref = simulate_sweep(script.reference_scene(idx), grid, &diag[idx]);
        slots[idx].emplace(SimulatedAngle{script.angles_deg[idx], std::move(dut), std::move(ref)});
    }
    std::vector<SimulatedAngle> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::move(*slots[i]));
        if (diagnostics)
            for (auto& w : diag[i].warnings) diagnostics->warn("angle " + angle_token(out.back().theta_deg) + ": " + w);
    }
    return out;
}

namespace {

std::vector<FrequencySweep> split_bands(const FrequencySweep& sweep, std::size_t bands) {
    const auto& g = sweep.grid();
    if (bands == 1) return {sweep};
    if (bands == 0 || bands > g.size() - 1)
        throw Error(Errc::InvalidArgument, "cannot split " + std::to_string(g.size()) + " points into " +
                                               std::to_string(bands) + " bands");
    std::vector<FrequencySweep> out;
    for (std::size_t b = 0; b < bands; ++b) {
        const std::size_t first = b * (g.size() - 1) / bands;
        const std::size_t last = (b + 1) * (g.size() - 1) / bands;
        std::vector<Complex> vals(sweep.values().begin() + static_cast<std::ptrdiff_t>(first),
                                  sweep.values().begin() + static_cast<std::ptrdiff_t>(last) + 1);
        out.emplace_back(FrequencyGrid(g.frequency(first), g.frequency(last), last - first + 1), std::move(vals));
    }
    return out;
}

}  // namespace

CampaignManifest generate_campaign(const CampaignScript& script, const FrequencyGrid& grid, const fs::path& out_dir,
                                   const GenerateOptions& options, Diagnostics* diagnostics) {
    if (options.bands == 0) throw Error(Errc::InvalidArgument, "band count must be >= 1");
    const auto angles = simulate_campaign(script, grid, diagnostics);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(Errc::Io, "cannot create '" + out_dir.string() + "': " + ec.message());

    CampaignManifest manifest;
    for (const auto& a : angles) {
        const fs::path dir = out_dir / ("angle_" + angle_token(a.theta_deg));
        fs::create_directories(dir, ec);
        if (ec) throw Error(Errc::Io, "cannot create '" + dir.string() + "': " + ec.message());
        CampaignEntry entry{a.theta_deg, {}, {}};
        const auto write_side = [&](const FrequencySweep& sweep, const std::string& stem,
                                    std::vector<fs::path>& paths) {
            const auto parts = split_bands(sweep, options.bands);
            for (std::size_t b = 0; b < parts.size(); ++b) {
                const std::string name =
                    parts.size() == 1 ? stem + ".s1p" : stem + "_b" + std::to_string(b + 1) + ".s1p";
                const fs::path path = dir / name;
                save_sweep(path, parts[b], options.format);
                paths.push_back(path);
            }
        };
        write_side(a.dut, "dut", entry.dut_bands);
        write_side(a.ref, "ref", entry.ref_bands);
        manifest.entries.push_back(std::move(entry));
    }
    manifest.validate();
    text::write_file(out_dir / kManifestFileName, write_manifest(manifest, out_dir));
    return manifest;
}

}  // namespace rcsgate

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <string>

#include "oracles.hpp"
#include "rcsgate/gating.hpp"
#include "rcsgate/ingest.hpp"
#include "rcsgate/pipeline.hpp"
#include "rcsgate/rcs.hpp"
#include "rcsgate/spectral.hpp"
#include "rcsgate/synth.hpp"
#include "rcsgate/text.hpp"

using namespace rcsgate;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1. Transform pair round trip.
Outcome transform_round_trip() {
    double worst = 0.0;
    for (std::size_t n : {16u, 101u, 1601u}) {
        for (std::size_t pad : {1u, 4u}) {
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                const FrequencySweep s(FrequencyGrid(22e9, 40e9, n), oracle::random_values(n, seed * 7919 + n + pad));
                const auto back = to_freq(to_time(s, pad), n);
                worst = std::max(worst, oracle::max_abs_diff(back.values(), s.values()) / oracle::max_abs(s.values()));
            }
        }
    }
    const FrequencySweep s(FrequencyGrid(22e9, 40e9, 1601), oracle::random_values(1601, 1));
    const auto t0 = std::chrono::steady_clock::now();
    const auto direct = to_freq(to_time(s, 1, TransformBackend::Direct), 1601, TransformBackend::Direct);
    const double direct_s = seconds_since(t0);
    worst = std::max(worst, oracle::max_abs_diff(direct.values(), s.values()) / oracle::max_abs(s.values()));
    return {worst < 1e-10 && direct_s < 1.0,
            fmt("max relative error %.2e (< 1e-10); direct N=1601 forward+inverse %.3f s (< 1 s)", worst, direct_s)};
}

// 2. Kaiser / Bessel.
Outcome kaiser_bessel() {
    double worst = 0.0;
    for (int i = 0; i <= 30000; ++i) {
        const double x = 0.001 * i;
        const long double ref = oracle::bessel_i0_series(x);
        worst = std::max(worst, static_cast<double>(std::abs((bessel_i0(x) - ref) / ref)));
    }
    bool ones = true, symmetric = true;
    for (std::size_t len = 1; len <= 300; ++len) {
        for (double v : kaiser_weights(len, 0.0)) ones = ones && v == 1.0;
        for (double beta : {0.5, 6.0, 13.0, 25.0}) {
            const auto w = kaiser_weights(len, beta);
            for (std::size_t n = 0; n < len; ++n) symmetric = symmetric && w[n] == w[len - 1 - n];
        }
    }
    return {worst < 1e-12 && ones && symmetric,
            fmt("I0 max relative error %.2e on [0, 30] (< 1e-12); beta 0 all ones: %s; exact symmetry: %s", worst,
                ones ? "yes" : "no", symmetric ? "yes" : "no")};
}

// 3. Suppression of an excluded return.
Outcome suppression() {
    const auto t0 = std::chrono::steady_clock::now();
    const FrequencyGrid grid(22e9, 40e9, 1601);
    const auto target = oracle::delay_line(grid, 28e-9);
    const auto clutter = oracle::delay_line(grid, 8e-9);
    std::vector<Complex> scene(grid.size());
    for (std::size_t i = 0; i < scene.size(); ++i) scene[i] = target[i] + clutter[i];
    const GateSpec gate{27e-9, 29e-9, {13.0}};
    const auto gated_scene = gate_sweep(FrequencySweep(grid, scene), gate);
    const auto gated_target = gate_sweep(FrequencySweep(grid, target), gate);
    // Leakage: what the excluded return adds to the gated spectrum, relative to its ungated level.
    auto worst_over = [&](double fraction) {
        const auto c = oracle::central(grid.size(), fraction);
        double worst = 0.0;
        for (std::size_t i = c.lo; i < c.hi; ++i)
            worst = std::max(worst, std::abs(gated_scene[i] - gated_target[i]) / std::abs(clutter[i]));
        return oracle::db(worst);
    };
    const double mid = worst_over(0.5);
    const double wide = worst_over(0.9);
    const double elapsed = seconds_since(t0);
    return {mid <= -80.0 && elapsed < 5.0,
            fmt("leakage %.1f dB over the central 50%% of 22-40 GHz (<= -80 dB; central 90%%: %.1f dB); %.3f s (< 5 s)",
                mid, wide, elapsed)};
}

// 4. RCSR fidelity against the scripted reflectivity.
double rcsr_error(const FrequencyGrid& grid) {
    auto script = demo_script();
    script.angles_deg = {1};
    script.dut[0].cos_power = 0.0;  // unit-reference comparison: DUT = Γ(f) only
    ReflectivityProfile gamma;
    gamma.points = {{grid.start(), -3.0, 0.0}, {grid.stop(), -20.0, 0.0}};
    script.dut[0].profile = gamma;
    const auto sim = simulate_campaign(script, grid);
    const auto r = process_angle(1, sim[0].dut, sim[0].ref, PipelineOptions{});
    const auto c = oracle::central(grid.size(), 0.9);
    double worst = 0.0;
    for (std::size_t i = c.lo; i < c.hi; ++i)
        worst = std::max(worst, std::abs(r.cut.rcsr_db[i] - oracle::db(std::abs(gamma.at(grid.frequency(i))))));
    return worst;
}

Outcome rcsr_fidelity() {
    const double err = rcsr_error(FrequencyGrid(10e9, 40e9, 1601));
    return {err <= 0.2, fmt("max |RCSR - 20log10|G|| %.3f dB over the central 90%% of 10-40 GHz (<= 0.2 dB)", err)};
}

// 5. Pattern pipeline, simulate to disk and process.
Outcome pattern_pipeline() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dir = fs::temp_directory_path() / "rcsgate_acceptance_campaign";
    fs::remove_all(dir);
    const FrequencyGrid grid(10e9, 40e9, 1601);
    const auto manifest = generate_campaign(demo_script(), grid, dir, {});
    const auto results = process_campaign(manifest, PipelineOptions{});
    std::vector<AngleCut> cuts;
    for (const auto& r : results) cuts.push_back(r.cut);
    double worst = 0.0;
    bool mirror = true, no_zero = true, counts = true, peak = true;
    for (double f0 : {18e9, 32e9}) {
        const auto p = assemble_pattern(cuts, f0, PatternSource::Dut);
        counts = counts && p.entries.size() == 180;
        double max_level = -1e300;
        const double top = oracle::db(std::cos(std::numbers::pi / 180.0));
        for (std::size_t i = 0; i < p.entries.size(); ++i) {
            const auto& e = p.entries[i];
            const auto& m = p.entries[p.entries.size() - 1 - i];
            no_zero = no_zero && e.theta_deg != 0.0;
            mirror = mirror && m.theta_deg == -e.theta_deg && std::memcmp(&m.level_db, &e.level_db, sizeof(double)) == 0;
            max_level = std::max(max_level, e.level_db);
            if (std::abs(e.theta_deg) <= 60.0) {
                const double want = oracle::db(std::cos(std::abs(e.theta_deg) * std::numbers::pi / 180.0)) - top;
                worst = std::max(worst, std::abs(e.level_db - want));
            }
        }
        peak = peak && max_level == 0.0;
    }
    const double elapsed = seconds_since(t0);
    fs::remove_all(dir);
    return {worst <= 0.3 && mirror && no_zero && counts && peak && elapsed < 30.0,
            fmt("max error %.3f dB for |theta| <= 60 at 18/32 GHz (<= 0.3 dB); mirror exact: %s; theta 0 absent: %s; "
                "180 entries: %s; max 0 dB: %s; %.2f s (< 30 s)",
                worst, mirror ? "yes" : "no", no_zero ? "yes" : "no", counts ? "yes" : "no", peak ? "yes" : "no",
                elapsed)};
}

// 6. A common complex gain cancels.
Outcome gain_invariance() {
    const FrequencyGrid grid(10e9, 40e9, 1601);
    const auto sims = simulate_campaign(demo_script(), grid);
    const Complex gain = std::polar(3.7, 1.234);
    std::vector<AngleInput> plain, scaled;
    for (const auto& s : sims) {
        plain.push_back({s.theta_deg, s.dut, s.ref});
        scaled.push_back({s.theta_deg, s.dut.scaled(gain), s.ref.scaled(gain)});
    }
    const auto a = process_angles(plain, PipelineOptions{});
    const auto b = process_angles(scaled, PipelineOptions{});
    double worst = 0.0;
    std::vector<AngleCut> ca, cb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < grid.size(); ++k)
            worst = std::max(worst, std::abs(a[i].cut.rcsr_db[k] - b[i].cut.rcsr_db[k]));
        ca.push_back(a[i].cut);
        cb.push_back(b[i].cut);
    }
    bool identical = true;
    for (auto src : {PatternSource::Dut, PatternSource::Ref, PatternSource::Rcsr}) {
        for (double f0 : {18e9, 32e9}) {
            const auto pa = assemble_pattern(ca, f0, src), pb = assemble_pattern(cb, f0, src);
            identical = identical && pa.entries.size() == pb.entries.size() &&
                        std::memcmp(pa.entries.data(), pb.entries.data(), pa.entries.size() * sizeof(PatternEntry)) == 0;
        }
    }
    return {worst <= 1e-9 && identical,
            fmt("max RCSR change %.2e dB (<= 1e-9 dB); patterns bit-identical: %s", worst, identical ? "yes" : "no")};
}

// 7. Ingestion round trips and stitching.
Outcome ingestion() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const FrequencySweep s(FrequencyGrid(10e9, 40e9, 1601), oracle::random_values(1601, seed, 3.0));
        for (auto fmt : {TouchstoneFormat::RealImag, TouchstoneFormat::MagAngle, TouchstoneFormat::DecibelAngle})
            worst = std::max(worst, oracle::max_abs_diff(parse_touchstone(write_touchstone(s, fmt)).values(), s.values()));
        worst = std::max(worst, oracle::max_abs_diff(parse_csv(write_csv(s)).values(), s.values()));
    }

    // Three overlapping bands over 10-40 GHz, written to and read back from files.
    const auto dir = fs::temp_directory_path() / "rcsgate_acceptance_bands";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const FrequencyGrid full(10e9, 40e9, 1601);
    const auto values = oracle::random_values(1601, 4242);
    const std::size_t spans[][2] = {{0, 560}, {540, 1080}, {1070, 1600}};
    std::vector<FrequencySweep> bands;
    for (std::size_t b = 0; b < 3; ++b) {
        const auto [lo, hi] = std::pair{spans[b][0], spans[b][1]};
        const FrequencySweep part(FrequencyGrid(full.frequency(lo), full.frequency(hi), hi - lo + 1),
                                  {values.begin() + lo, values.begin() + hi + 1});
        const auto path = dir / ("band" + std::to_string(b) + ".s1p");
        save_sweep(path, part);
        bands.push_back(load_sweep(path));
    }
    std::swap(bands[0], bands[2]);
    const auto stitched = stitch_bands(bands);
    fs::remove_all(dir);
    const bool uniform = stitched.size() == 1601 && stitched.grid().start() == 10e9 &&
                         std::abs(stitched.grid().stop() - 40e9) < 1e-3 &&
                         oracle::max_abs_diff(stitched.values(), values) < 1e-12;

    const double df = 18.75e6;
    const FrequencySweep lo(FrequencyGrid(10e9, 10e9 + 2 * df, 3), {{1, 0}, {1, 0}, {1, 0}});
    const FrequencySweep hi(FrequencyGrid(10e9 + 2 * df, 10e9 + 4 * df, 3), {{0, 1}, {0, 1}, {0, 1}});
    const std::vector<FrequencySweep> pair{lo, hi};
    const auto avg = stitch_bands(pair);
    const bool averaged = avg.size() == 5 && avg[2] == Complex(0.5, 0.5);

    return {worst < 1e-12 && uniform && averaged,
            fmt("RI/MA/DB/CSV round-trip max error %.2e (< 1e-12); three-band 10-40 GHz stitch uniform: %s; "
                "overlap (1+0i, 0+1i) -> 0.5+0.5i: %s",
                worst, uniform ? "yes" : "no", averaged ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"1 transform pair round trip", transform_round_trip},
        {"2 Kaiser/Bessel correctness", kaiser_bessel},
        {"3 suppression >= 80 dB", suppression},
        {"4 RCSR fidelity", rcsr_fidelity},
        {"5 pattern pipeline", pattern_pipeline},
        {"6 gain invariance", gain_invariance},
        {"7 ingestion", ingestion},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s [%s] %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    const double narrow_band = rcsr_error(FrequencyGrid(22e9, 40e9, 1601));
    std::printf("info: RCSR fidelity on the 22-40 GHz grid: %.3f dB over the central 90%%\n", narrow_band);
    std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}

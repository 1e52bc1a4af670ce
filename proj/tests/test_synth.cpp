#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "rcsgate/error.hpp"
#include "rcsgate/ingest.hpp"
#include "rcsgate/manifest.hpp"
#include "rcsgate/spectral.hpp"
#include "rcsgate/synth.hpp"
#include "rcsgate/text.hpp"

using namespace rcsgate;
namespace fs = std::filesystem;

namespace {

const FrequencyGrid kWideGrid(22e9, 40e9, 1601);

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Io;
}

bool bit_equal(const FrequencySweep& a, const FrequencySweep& b) {
    if (!(a.grid() == b.grid())) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag()) return false;
    return true;
}

CampaignScript small_script() {
    CampaignScript s;
    s.angles_deg = {1, 30, 60};
    s.reference = {{28e-9, {1, 0}, 0.0, std::nullopt}};
    s.dut = {{28e-9, {0.5, 0.1}, 1.0, std::nullopt}};
    s.clutter = {{8e-9, {0.3, -0.2}, std::nullopt}};
    s.noise_floor_db = -50.0;
    s.seed = 42;
    return s;
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("rcsgate_test_synth_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("trivial scenes") {
    const auto empty = simulate_sweep(Scene{}, kWideGrid);
    CHECK(oracle::max_abs(empty.values()) == 0.0);
    const auto ones = simulate_sweep(Scene{{{0.0, {1, 0}, std::nullopt}}, std::nullopt, 0}, kWideGrid);
    for (const auto& v : ones.values()) CHECK(v == Complex(1, 0));
}

TEST_CASE("point returns match the forward model") {
    const Scene s{{{28e-9, {0.7, -0.3}, std::nullopt}, {8.25e-9, {0.1, 0.2}, std::nullopt}}, std::nullopt, 0};
    const auto sweep = simulate_sweep(s, kWideGrid);
    const auto a = oracle::delay_line(kWideGrid, 28e-9, {0.7, -0.3});
    const auto b = oracle::delay_line(kWideGrid, 8.25e-9, {0.1, 0.2});
    double worst = 0.0;
    for (std::size_t i = 0; i < sweep.size(); ++i) worst = std::max(worst, std::abs(sweep[i] - a[i] - b[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("28 ns return peaks at 28 ns") {
    const auto sweep = simulate_sweep(Scene{{{28e-9, {1, 0}, std::nullopt}}, std::nullopt, 0}, kWideGrid);
    for (std::size_t pad : {1u, 4u}) {
        const auto t = to_time(sweep, pad);
        std::size_t arg = 0;
        for (std::size_t k = 0; k < t.size(); ++k)
            if (std::abs(t[k]) > std::abs(t[arg])) arg = k;
        CHECK(std::abs(t.time(arg) - 28e-9) <= t.dt() / 2);
    }
}

TEST_CASE("reflectivity profile") {
    ReflectivityProfile p;
    p.points = {{10e9, -3.0, 0.0}, {40e9, -20.0, 90.0}};
    CHECK(std::abs(p.at(10e9)) == doctest::Approx(std::pow(10.0, -3.0 / 20)).epsilon(1e-14));
    CHECK(std::abs(p.at(5e9)) == doctest::Approx(std::pow(10.0, -3.0 / 20)).epsilon(1e-14));
    CHECK(std::abs(p.at(45e9)) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(std::arg(p.at(45e9)) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    // Linear in dB and in phase between points.
    const auto mid = p.at(25e9);
    CHECK(oracle::db(std::abs(mid)) == doctest::Approx(-11.5).epsilon(1e-13));
    CHECK(std::arg(mid) * 180 / std::numbers::pi == doctest::Approx(45.0).epsilon(1e-13));

    const Scene s{{{0.0, {2, 0}, p}}, std::nullopt, 0};
    const auto sweep = simulate_sweep(s, FrequencyGrid(10e9, 40e9, 31));
    CHECK(std::abs(sweep[15]) == doctest::Approx(2 * std::abs(mid)).epsilon(1e-13));
}

TEST_CASE("determinism and seeds") {
    Scene s{{{28e-9, {1, 0}, std::nullopt}}, -40.0, 1234};
    const auto a = simulate_sweep(s, kWideGrid);
    const auto b = simulate_sweep(s, kWideGrid);
    CHECK(bit_equal(a, b));
    s.seed = 1235;
    CHECK_FALSE(bit_equal(a, simulate_sweep(s, kWideGrid)));
}

TEST_CASE("noise follows the documented generator") {
    const Scene s{{}, -20.0, 777};
    const auto sweep = simulate_sweep(s, FrequencyGrid(1e9, 2e9, 64));
    std::mt19937_64 rng(777);
    const double sigma = 0.1 / std::sqrt(2.0);
    for (std::size_t i = 0; i < 64; ++i) {
        const double u1 = static_cast<double>(rng() >> 11) / 9007199254740992.0;
        const double u2 = static_cast<double>(rng() >> 11) / 9007199254740992.0;
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double a = 2.0 * std::numbers::pi * u2;
        CHECK(sweep[i].real() == doctest::Approx(sigma * r * std::cos(a)).epsilon(1e-15));
        CHECK(sweep[i].imag() == doctest::Approx(sigma * r * std::sin(a)).epsilon(1e-15));
    }
}

TEST_CASE("noise RMS") {
    const FrequencyGrid g(1e9, 2e9, 200001);
    for (double floor_db : {-60.0, -30.0, 0.0}) {
        const auto sweep = simulate_sweep(Scene{{}, floor_db, 9}, g);
        double power = 0.0, mean_re = 0.0;
        for (const auto& v : sweep.values()) {
            power += std::norm(v);
            mean_re += v.real();
        }
        const double rms = std::sqrt(power / static_cast<double>(g.size()));
        const double want = std::pow(10.0, floor_db / 20.0);
        CHECK(std::abs(rms / want - 1.0) < 0.05);
        CHECK(std::abs(mean_re / static_cast<double>(g.size())) < 0.01 * want);
    }
}

TEST_CASE("superposition without noise") {
    const Scene a{{{28e-9, {1, 0.5}, std::nullopt}, {3e-9, {0.2, 0}, std::nullopt}}, std::nullopt, 0};
    ReflectivityProfile p;
    p.points = {{22e9, 0.0}, {40e9, -10.0, 30.0}};
    const Scene b{{{8e-9, {0.4, -0.1}, p}}, std::nullopt, 0};
    Scene both = a;
    both.scatterers.insert(both.scatterers.end(), b.scatterers.begin(), b.scatterers.end());
    const auto sa = simulate_sweep(a, kWideGrid), sb = simulate_sweep(b, kWideGrid),
               sab = simulate_sweep(both, kWideGrid);
    double worst = 0.0;
    for (std::size_t i = 0; i < sab.size(); ++i) worst = std::max(worst, std::abs(sab[i] - sa[i] - sb[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("scene validation and alias warning") {
    Diagnostics d;
    simulate_sweep(Scene{{{100e-9, {1, 0}, std::nullopt}}, std::nullopt, 0}, kWideGrid, &d);
    REQUIRE(d.warnings.size() == 1);
    CHECK(d.warnings[0].find("alias") != std::string::npos);
    CHECK(code_of([] { simulate_sweep(Scene{{{-1e-9, {1, 0}, std::nullopt}}, std::nullopt, 0}, kWideGrid); }) ==
          Errc::InvalidArgument);
    CHECK(code_of([] {
              simulate_sweep(Scene{{{1e-9, {std::nan(""), 0}, std::nullopt}}, std::nullopt, 0}, kWideGrid);
          }) == Errc::InvalidArgument);
}

TEST_CASE("angle templates") {
    const TargetTemplate t{28e-9, {2, 0}, 1.0, std::nullopt};
    CHECK(t.at_angle(60).amplitude.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.at_angle(90).amplitude.real() == doctest::Approx(0.0));
    const TargetTemplate sq{28e-9, {1, 0}, 2.0, std::nullopt};
    CHECK(sq.at_angle(45).amplitude.real() == doctest::Approx(0.5).epsilon(1e-14));
    const TargetTemplate flat{28e-9, {1, 0}, 0.0, std::nullopt};
    CHECK(flat.at_angle(90).amplitude == Complex(1, 0));
}

TEST_CASE("campaign scenes share clutter; noise streams differ") {
    const auto s = small_script();
    for (std::size_t i = 0; i < s.angles_deg.size(); ++i) {
        const auto d = s.dut_scene(i), r = s.reference_scene(i);
        REQUIRE(d.scatterers.size() == 2);
        REQUIRE(r.scatterers.size() == 2);
        CHECK(d.scatterers[1].delay == r.scatterers[1].delay);
        CHECK(d.scatterers[1].amplitude == r.scatterers[1].amplitude);
        CHECK(d.scatterers[0].delay == r.scatterers[0].delay);
        CHECK(d.seed != r.seed);
        CHECK(d.seed == derive_seed(42, i, 0));
    }
    CHECK(derive_seed(42, 0, 0) != derive_seed(42, 1, 0));
    CHECK(derive_seed(42, 0, 1) != derive_seed(42, 1, 0));
    CHECK(derive_seed(42, 3, 1) != derive_seed(43, 3, 1));
}

TEST_CASE("script validation") {
    auto s = small_script();
    s.angles_deg = {0.5};
    CHECK(code_of([&] { s.validate(); }) == Errc::InvalidScript);
    s = small_script();
    s.angles_deg = {2, 1};
    CHECK(code_of([&] { s.validate(); }) == Errc::InvalidScript);
    s = small_script();
    s.reference.clear();
    CHECK(code_of([&] { s.validate(); }) == Errc::InvalidScript);
    s = small_script();
    s.dut[0].cos_power = -1;
    CHECK(code_of([&] { s.validate(); }) == Errc::InvalidScript);
    CHECK_NOTHROW(demo_script().validate());
}

TEST_CASE("demo script") {
    const auto s = demo_script();
    CHECK(s.angles_deg.size() == 90);
    CHECK(s.angles_deg.front() == 1.0);
    CHECK(s.angles_deg.back() == 90.0);
    CHECK(s.reference.at(0).delay == 28e-9);
    CHECK(s.dut.at(0).cos_power == 1.0);
    for (const auto& c : s.clutter) {
        CHECK(c.delay >= 6e-9);
        CHECK(c.delay <= 10e-9);
    }
    CHECK(s.noise_floor_db == -60.0);
}

TEST_CASE("shipped demo script equals the built-in one") {
    const auto shipped = parse_script(text::read_file(fs::path(RCSGATE_DATA_DIR) / "demo_script.json"));
    CHECK(write_script(shipped) == write_script(demo_script()));
}

TEST_CASE("script JSON") {
    const auto demo = demo_script();
    const auto back = parse_script(write_script(demo));
    CHECK(back.angles_deg == demo.angles_deg);
    CHECK(back.seed == demo.seed);
    CHECK(back.noise_floor_db == demo.noise_floor_db);
    REQUIRE(back.clutter.size() == demo.clutter.size());
    CHECK(back.clutter[2].amplitude == demo.clutter[2].amplitude);
    REQUIRE(back.dut.at(0).profile);
    CHECK(back.dut[0].profile->points.size() == 2);
    CHECK(write_script(back) == write_script(demo));

    const auto parsed = parse_script(R"({
        "seed": 7,
        "noise_floor_db": null,
        "angles": {"start": 1, "stop": 10, "step": 3},
        "reference": [{"delay": "28ns"}],
        "dut": [{"delay": 28e-9, "amplitude": {"mag": 0.5, "phase_deg": 90}, "cos_power": 2,
                 "reflectivity": [["10GHz", -3], [40e9, -20, 15]]}],
        "clutter": [{"delay": "8 ns", "amplitude": [0.1, -0.2]}]
    })");
    CHECK(parsed.angles_deg == std::vector<double>{1, 4, 7, 10});
    CHECK_FALSE(parsed.noise_floor_db);
    CHECK(parsed.reference[0].delay == doctest::Approx(28e-9).epsilon(1e-15));
    CHECK(parsed.reference[0].amplitude == Complex(1, 0));
    CHECK(std::abs(parsed.dut[0].amplitude - Complex(0, 0.5)) < 1e-15);
    CHECK(parsed.dut[0].profile->points[0].freq_hz == 10e9);
    CHECK(parsed.dut[0].profile->points[1].phase_deg == 15.0);
    CHECK(parsed.clutter[0].amplitude == Complex(0.1, -0.2));

    for (const char* bad : {
             "{",
             R"({"angles": [1], "reference": [{"delay": 1e-9}]})",
             R"({"angles": [1], "reference": [{"delay": 1e-9}], "dut": [{"delay": 1e-9}], "extra": 1})",
             R"({"angles": [1], "reference": [{}], "dut": [{"delay": 1e-9}]})",
             R"({"angles": [1], "reference": [{"delay": "soon"}], "dut": [{"delay": 1e-9}]})",
             R"({"angles": [1], "reference": [{"delay": 1e-9}], "dut": [{"delay": 1e-9}],
                 "clutter": [{"delay": 1e-9, "cos_power": 1}]})",
             R"({"angles": {"stop": 3}, "reference": [{"delay": 1e-9}], "dut": [{"delay": 1e-9}]})",
             R"({"angles": [1], "reference": [{"delay": 1e-9, "amplitude": {"phase_deg": 3}}], "dut": [{"delay": 1e-9}]})",
             R"({"seed": -1, "angles": [1], "reference": [{"delay": 1e-9}], "dut": [{"delay": 1e-9}]})",
         }) {
        INFO(bad);
        CHECK(code_of([&] { parse_script(bad); }) == Errc::InvalidScript);
    }
}

TEST_CASE("campaign generation round-trips through files") {
    const auto script = small_script();
    const FrequencyGrid grid(10e9, 40e9, 401);
    const auto memory = simulate_campaign(script, grid);
    REQUIRE(memory.size() == 3);
    for (auto fmt : {TouchstoneFormat::RealImag, TouchstoneFormat::DecibelAngle}) {
        for (std::size_t bands : {1u, 3u}) {
            const auto dir = scratch("gen");
            const auto manifest = generate_campaign(script, grid, dir, {bands, fmt});
            std::size_t files = 0;
            for (const auto& e : fs::recursive_directory_iterator(dir))
                if (e.path().extension() == ".s1p") ++files;
            CHECK(files == 6 * bands);
            const auto loaded = load_manifest(dir);
            REQUIRE(loaded.entries.size() == 3);
            CHECK(text::lines(text::read_file(dir / "manifest.tsv")).size() >= 3);
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(loaded.entries[i].angle_deg == memory[i].theta_deg);
                const auto pair = load_angle(loaded.entries[i]);
                CHECK(pair.dut.grid() == grid);
                CHECK(oracle::max_abs_diff(pair.dut.values(), memory[i].dut.values()) < 1e-12);
                CHECK(oracle::max_abs_diff(pair.ref.values(), memory[i].ref.values()) < 1e-12);
            }
            CHECK(manifest.angles() == loaded.angles());
        }
    }
}

TEST_CASE("rerun writes identical files") {
    const auto a = scratch("rerun_a"), b = scratch("rerun_b");
    generate_campaign(small_script(), FrequencyGrid(10e9, 40e9, 101), a, {});
    generate_campaign(small_script(), FrequencyGrid(10e9, 40e9, 101), b, {});
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (!e.is_regular_file()) continue;
        const auto rel = fs::relative(e.path(), a);
        CHECK(text::read_file(e.path()) == text::read_file(b / rel));
    }
}

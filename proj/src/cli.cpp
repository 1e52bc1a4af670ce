#include "rcsgate/cli.hpp"

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcsgate/error.hpp"
#include "rcsgate/gating.hpp"
#include "rcsgate/ingest.hpp"
#include "rcsgate/manifest.hpp"
#include "rcsgate/pipeline.hpp"
#include "rcsgate/rcs.hpp"
#include "rcsgate/svg.hpp"
#include "rcsgate/synth.hpp"
#include "rcsgate/text.hpp"
#include "rcsgate/units.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace rcsgate::cli {
namespace {

/// Bad flags, missing inputs, unknown angles: exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputFlags {
    std::string out;
    std::string format = "both";

    bool csv() const { return format != "svg"; }
    bool svg() const { return format != "csv"; }
};

struct GateFlags {
    std::size_t pad = kDefaultPadFactor;
    double beta = kDefaultBeta;
    std::string gate;
    std::string half_width;
    std::optional<double> threshold_db;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags, bool with_format) {
    cmd->add_option("--out", flags.out, "Output directory")->required();
    if (with_format)
        cmd->add_option("--format", flags.format, "Plot/table output: csv, svg or both")
            ->check(CLI::IsMember({"csv", "svg", "both"}))
            ->capture_default_str();
}

void add_gate_flags(CLI::App* cmd, GateFlags& flags) {
    cmd->add_option("--pad", flags.pad, "Zero-padding factor (>= 1)")->capture_default_str();
    cmd->add_option("--beta", flags.beta, "Kaiser shape parameter (>= 0)")->capture_default_str();
    cmd->add_option("--gate", flags.gate, "Manual gate <t1>:<t2>, e.g. 27ns:29ns");
    cmd->add_option("--half-width", flags.half_width, "Gate half width around the reference peak (default 1ns)");
    cmd->add_option("--threshold-db", flags.threshold_db, "Gate where |ref| stays within this many dB of its peak");
}

double time_flag(const std::string& literal, const char* flag) {
    try {
        return units::parse_time(literal);
    } catch (const Error& e) {
        throw UsageError(std::string(flag) + ": " + e.detail());
    }
}

double freq_flag(const std::string& literal, const char* flag) {
    try {
        return units::parse_frequency(literal);
    } catch (const Error& e) {
        throw UsageError(std::string(flag) + ": " + e.detail());
    }
}

PipelineOptions pipeline_options(const GateFlags& flags) {
    PipelineOptions opt;
    opt.pad_factor = flags.pad;
    opt.beta = flags.beta;
    const int modes = !flags.gate.empty() + !flags.half_width.empty() + flags.threshold_db.has_value();
    if (modes > 1) throw UsageError("--gate, --half-width and --threshold-db are mutually exclusive");
    if (!flags.gate.empty()) {
        const auto parts = text::split(flags.gate, ':');
        if (parts.size() != 2) throw UsageError("--gate expects <t1>:<t2>, got '" + flags.gate + "'");
        opt.manual_gate = std::pair{time_flag(std::string(parts[0]), "--gate"), time_flag(std::string(parts[1]), "--gate")};
    } else if (flags.threshold_db) {
        opt.detection = ThresholdDb{*flags.threshold_db};
    } else if (!flags.half_width.empty()) {
        opt.detection = HalfWidth{time_flag(flags.half_width, "--half-width")};
    }
    try {
        opt.validate();
    } catch (const Error& e) {
        throw UsageError(e.detail());
    }
    return opt;
}

std::string mode_name(const PipelineOptions& opt) {
    if (opt.manual_gate) return "manual";
    return std::holds_alternative<HalfWidth>(opt.detection) ? "half_width" : "threshold";
}

CampaignManifest open_manifest(const std::string& path) {
    if (!fs::exists(path)) throw UsageError("manifest '" + path + "' does not exist");
    try {
        return load_manifest(path);
    } catch (const Error& e) {
        throw UsageError(path + ": " + e.detail());
    }
}

const CampaignEntry& find_angle(const CampaignManifest& manifest, double angle, const std::string& path) {
    const auto* entry = manifest.find(angle);
    if (!entry) throw UsageError("angle " + angle_token(angle) + " is not in manifest '" + path + "'");
    return *entry;
}

void make_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::Io, "cannot create '" + dir.string() + "': " + ec.message());
}

json null_if_inf(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json gate_report_json(double angle, const GateReport& report, const TimeResponse& ref_time,
                      const PipelineOptions& opt, const Diagnostics& diag) {
    return json{{"angle_deg", angle},
                {"mode", mode_name(opt)},
                {"gate", {{"t_start_s", report.gate.t_start}, {"t_stop_s", report.gate.t_stop}, {"beta", report.gate.shape.beta}}},
                {"peak_time_s", report.peak_time},
                {"peak_magnitude", report.peak_magnitude},
                {"suppression_estimate_db", null_if_inf(report.suppression_db)},
                {"pad_factor", opt.pad_factor},
                {"dt_s", ref_time.dt()},
                {"alias_span_s", ref_time.alias_span()},
                {"warnings", diag.warnings}};
}

std::string time_csv(const TimeResponse& t) {
    text::Table table;
    table.columns = {"time_s", "re", "im", "mag_db"};
    const double n = static_cast<double>(t.band().size());
    for (std::size_t k = 0; k < t.size(); ++k)
        table.rows.push_back({t.time(k), t[k].real(), t[k].imag(), 20.0 * std::log10(std::abs(t[k]) / n)});
    return text::write_table(table);
}

svg::Series time_series(const std::string& label, const TimeResponse& t) {
    svg::Series s{label, {}, {}};
    const double n = static_cast<double>(t.band().size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        s.x.push_back(t.time(k) * 1e9);
        s.y.push_back(20.0 * std::log10(std::abs(t[k]) / n));
    }
    return s;
}

svg::Series spectrum_series(const std::string& label, const FrequencyGrid& grid, const std::vector<double>& y) {
    svg::Series s{label, {}, y};
    for (std::size_t i = 0; i < grid.size(); ++i) s.x.push_back(grid.frequency(i) / 1e9);
    return s;
}

void print_warnings(const Diagnostics& diag, std::ostream& err) {
    for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string script;
    bool demo = false;
    std::string f_start = "10GHz";
    std::string f_stop = "40GHz";
    std::size_t points = 1601;
    std::size_t bands = 1;
    std::string touchstone = "ri";
    OutputFlags output;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    if (args.demo == !args.script.empty()) throw UsageError("give either a script path or --demo");
    CampaignScript script;
    if (args.demo) {
        script = demo_script();
    } else {
        if (!fs::exists(args.script)) throw UsageError("script '" + args.script + "' does not exist");
        try {
            script = parse_script(text::read_file(args.script));
        } catch (const Error& e) {
            throw UsageError(args.script + ": " + e.detail());
        }
    }
    std::optional<FrequencyGrid> grid;
    try {
        grid.emplace(freq_flag(args.f_start, "--f-start"), freq_flag(args.f_stop, "--f-stop"), args.points);
    } catch (const Error& e) {
        throw UsageError(e.detail());
    }
    if (args.bands < 1 || args.bands > args.points - 1) throw UsageError("--bands must be in [1, points-1]");
    GenerateOptions gen;
    gen.bands = args.bands;
    gen.format = args.touchstone == "ri" ? TouchstoneFormat::RealImag
               : args.touchstone == "ma" ? TouchstoneFormat::MagAngle
                                         : TouchstoneFormat::DecibelAngle;

    Diagnostics diag;
    const fs::path dir = args.output.out;
    generate_campaign(script, *grid, dir, gen, &diag);
    text::write_file(dir / "script.json", write_script(script));
    print_warnings(diag, err);
    out << (dir / kManifestFileName).string() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- gate / rcsr

struct AngleArgs {
    std::string manifest;
    double angle = 1.0;
    GateFlags gate;
    OutputFlags output;
};

AngleTrace run_angle(const AngleArgs& args, const PipelineOptions& opt) {
    const auto manifest = open_manifest(args.manifest);
    const auto& entry = find_angle(manifest, args.angle, args.manifest);
    const auto pair = load_angle(entry);
    try {
        return trace_angle(entry.angle_deg, pair.dut, pair.ref, opt);
    } catch (const Error& e) {
        throw Error(e.code(), "angle " + angle_token(entry.angle_deg) + " deg: " + e.detail());
    }
}

std::string ns_text(double s) { return text::format_double(s * 1e9) + " ns"; }

int cmd_gate(const AngleArgs& args, std::ostream& out, std::ostream& err) {
    const auto opt = pipeline_options(args.gate);
    const auto trace = run_angle(args, opt);
    const fs::path dir = args.output.out;
    make_out_dir(dir);

    if (args.output.csv()) {
        text::write_file(dir / "ref_time.csv", time_csv(trace.ref_time));
        text::write_file(dir / "dut_time.csv", time_csv(trace.dut_time));
        text::write_file(dir / "ref_time_gated.csv", time_csv(trace.ref_time_gated));
        text::write_file(dir / "dut_time_gated.csv", time_csv(trace.dut_time_gated));
    }
    if (args.output.svg()) {
        const std::string at = " at " + angle_token(trace.cut.theta_deg) + " deg";
        text::write_file(dir / "time_response.svg",
                         svg::render({"Time response" + at, "time (ns)", "|X|/N (dB)",
                                      {time_series("reference", trace.ref_time), time_series("DUT", trace.dut_time)},
                                      std::nullopt}));
        text::write_file(dir / "time_response_gated.svg",
                         svg::render({"Gated time response" + at, "time (ns)", "|X|/N (dB)",
                                      {time_series("reference", trace.ref_time_gated),
                                       time_series("DUT", trace.dut_time_gated)},
                                      std::pair{-160.0, 10.0}}));
    }
    text::write_file(dir / "gate_report.json",
                     gate_report_json(trace.cut.theta_deg, trace.report, trace.ref_time, opt, trace.diagnostics).dump(2) + "\n");
    print_warnings(trace.diagnostics, err);
    out << "gate " << ns_text(trace.report.gate.t_start) << " .. " << ns_text(trace.report.gate.t_stop) << " (peak "
        << ns_text(trace.report.peak_time) << ")\n";
    return kExitOk;
}

int cmd_rcsr(const AngleArgs& args, std::ostream& out, std::ostream& err) {
    const auto opt = pipeline_options(args.gate);
    const auto trace = run_angle(args, opt);
    const fs::path dir = args.output.out;
    make_out_dir(dir);
    const auto& cut = trace.cut;

    if (args.output.csv()) {
        text::write_file(dir / "dut_gated.csv", write_csv(cut.dut_gated));
        text::write_file(dir / "ref_gated.csv", write_csv(cut.ref_gated));
        text::Table table;
        table.columns = {"freq_hz", "rcsr_db"};
        for (std::size_t i = 0; i < cut.grid().size(); ++i) table.rows.push_back({cut.grid().frequency(i), cut.rcsr_db[i]});
        text::write_file(dir / "rcsr.csv", text::write_table(table));
    }
    if (args.output.svg()) {
        const std::string at = " at " + angle_token(cut.theta_deg) + " deg";
        text::write_file(dir / "gated_spectra.svg",
                         svg::render({"Gated reflection" + at, "frequency (GHz)", "|S11| (dB)",
                                      {spectrum_series("reference", cut.grid(), magnitude_db(cut.ref_gated)),
                                       spectrum_series("DUT", cut.grid(), magnitude_db(cut.dut_gated))},
                                      std::nullopt}));
        text::write_file(dir / "rcsr.svg", svg::render({"RCS reduction" + at, "frequency (GHz)", "RCSR (dB)",
                                                        {spectrum_series("RCSR", cut.grid(), cut.rcsr_db)},
                                                        std::nullopt}));
    }
    text::write_file(dir / "gate_report.json",
                     gate_report_json(cut.theta_deg, trace.report, trace.ref_time, opt, trace.diagnostics).dump(2) + "\n");
    print_warnings(trace.diagnostics, err);
    out << (dir / "rcsr.csv").string() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- pattern

struct PatternArgs {
    std::string manifest;
    std::string f0_list;
    std::string source = "dut";
    GateFlags gate;
    OutputFlags output;
};

int cmd_pattern(const PatternArgs& args, std::ostream& out, std::ostream& err) {
    const auto opt = pipeline_options(args.gate);
    std::vector<double> f0s;
    for (auto part : text::split(args.f0_list, ',')) {
        if (text::trim(part).empty()) throw UsageError("--f0 has an empty entry");
        f0s.push_back(freq_flag(std::string(part), "--f0"));
    }
    PatternSource source;
    try {
        source = parse_pattern_source(args.source);
    } catch (const Error& e) {
        throw UsageError(e.detail());
    }

    const auto manifest = open_manifest(args.manifest);
    const auto results = process_campaign(manifest, opt, Execution::Parallel);
    std::vector<AngleCut> cuts;
    for (const auto& r : results) {
        cuts.push_back(r.cut);
        for (const auto& w : r.diagnostics.warnings) err << "warning: angle " << angle_token(r.cut.theta_deg) << ": " << w << '\n';
    }

    // Every pattern is assembled before anything is written.
    std::vector<BistaticPattern> patterns;
    for (double f0 : f0s) {
        try {
            patterns.push_back(assemble_pattern(cuts, f0, source));
        } catch (const Error& e) {
            if (e.code() == Errc::OutOfBand) throw UsageError(std::string("--f0: ") + e.what());
            throw;
        }
    }

    const fs::path dir = args.output.out;
    make_out_dir(dir);
    for (const auto& p : patterns) {
        const std::string stem = "pattern_" + units::frequency_label(p.f0);
        if (args.output.csv()) {
            text::Table table;
            table.columns = {"theta_deg", "level_db"};
            for (const auto& e : p.entries) table.rows.push_back({e.theta_deg, e.level_db});
            text::write_file(dir / (stem + ".csv"), text::write_table(table));
        }
        if (args.output.svg()) {
            svg::Series s{std::string(to_string(p.source)), {}, {}};
            for (const auto& e : p.entries) {
                s.x.push_back(e.theta_deg);
                s.y.push_back(e.level_db);
            }
            text::write_file(dir / (stem + ".svg"),
                             svg::render({"Normalised bistatic pattern at " + units::frequency_label(p.f0),
                                          "theta (deg)", "level (dB)", {s}, std::nullopt}));
        }
        const json meta{{"f0_hz", p.f0},
                        {"source", to_string(p.source)},
                        {"normalization", "global maximum across all angles at f0"},
                        {"reference_level_db", p.reference_level_db},
                        {"reference_theta_deg", p.reference_theta_deg},
                        {"entries", p.entries.size()},
                        {"level_quantum_db", kPatternQuantum},
                        {"gate_mode", mode_name(opt)},
                        {"pad_factor", opt.pad_factor},
                        {"beta", opt.beta}};
        text::write_file(dir / (stem + ".json"), meta.dump(2) + "\n");
        out << (dir / (stem + ".csv")).string() << '\n';
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rcsgate: time-gated bistatic RCS measurement post-processing"};
    app.name(args.empty() ? "rcsgate" : fs::path(args[0]).filename().string());
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Write a synthetic campaign (Touchstone files + manifest)");
    simulate->add_option("script", sim.script, "Scene script (JSON)");
    simulate->add_flag("--demo", sim.demo, "Use the built-in demo script");
    simulate->add_option("--f-start", sim.f_start, "Start frequency")->capture_default_str();
    simulate->add_option("--f-stop", sim.f_stop, "Stop frequency")->capture_default_str();
    simulate->add_option("--points", sim.points, "Frequency points")->capture_default_str();
    simulate->add_option("--bands", sim.bands, "Split each sweep into this many band files")->capture_default_str();
    simulate->add_option("--touchstone-format", sim.touchstone, "ri, ma or db")
        ->check(CLI::IsMember({"ri", "ma", "db"}))
        ->capture_default_str();
    add_output_flags(simulate, sim.output, false);

    AngleArgs gate_args;
    auto* gate = app.add_subcommand("gate", "Time responses and gate for one angle");
    gate->add_option("manifest", gate_args.manifest, "Manifest file or campaign directory")->required();
    gate->add_option("--angle", gate_args.angle, "Bistatic angle in degrees")->capture_default_str();
    add_gate_flags(gate, gate_args.gate);
    add_output_flags(gate, gate_args.output, true);

    AngleArgs rcsr_args;
    auto* rcsr = app.add_subcommand("rcsr", "RCS-reduction spectrum for one angle");
    rcsr->add_option("manifest", rcsr_args.manifest, "Manifest file or campaign directory")->required();
    rcsr->add_option("--angle", rcsr_args.angle, "Bistatic angle in degrees")->capture_default_str();
    add_gate_flags(rcsr, rcsr_args.gate);
    add_output_flags(rcsr, rcsr_args.output, true);

    PatternArgs pattern_args;
    auto* pattern = app.add_subcommand("pattern", "Normalised, mirrored bistatic patterns at given frequencies");
    pattern->add_option("manifest", pattern_args.manifest, "Manifest file or campaign directory")->required();
    pattern->add_option("--f0", pattern_args.f0_list, "Comma-separated frequencies, e.g. 18GHz,32GHz")->required();
    pattern->add_option("--source", pattern_args.source, "dut, ref or rcsr")->capture_default_str();
    add_gate_flags(pattern, pattern_args.gate);
    add_output_flags(pattern, pattern_args.output, true);

    std::vector<const char*> argv;
    argv.push_back(args.empty() ? "rcsgate" : args[0].c_str());
    for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim, out, err);
        if (*gate) return cmd_gate(gate_args, out, err);
        if (*rcsr) return cmd_rcsr(rcsr_args, out, err);
        if (*pattern) return cmd_pattern(pattern_args, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == Errc::OutOfBand ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace rcsgate::cli

#include "rcsgate/pipeline.hpp"

#include <cmath>
#include <exception>
#include <optional>

#include "rcsgate/synth.hpp"
#include "rcsgate/text.hpp"

namespace rcsgate {
namespace {

GateReport locate_gate(const TimeResponse& ref_time, const PipelineOptions& options) {
    if (options.manual_gate) {
        GateSpec gate{options.manual_gate->first, options.manual_gate->second, WindowShape{options.beta}};
        return describe_gate(ref_time, gate);
    }
    return detect_gate(ref_time, options.detection, options.beta);
}

std::string angle_prefix(double theta) { return "angle " + angle_token(theta) + " deg: "; }

}  // namespace

void PipelineOptions::validate() const {
    if (pad_factor < 1) throw Error(Errc::InvalidArgument, "pad factor must be >= 1");
    if (!std::isfinite(beta) || beta < 0.0) throw Error(Errc::InvalidArgument, "beta must be finite and >= 0");
    if (manual_gate) {
        const auto [a, b] = *manual_gate;
        if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || !(a < b))
            throw Error(Errc::InvalidArgument, "manual gate needs 0 <= t1 < t2");
    }
    if (const auto* hw = std::get_if<HalfWidth>(&detection)) {
        if (!std::isfinite(hw->seconds) || !(hw->seconds > 0.0))
            throw Error(Errc::InvalidArgument, "half width must be positive");
    } else if (const double db = std::get<ThresholdDb>(detection).db; !std::isfinite(db) || !(db < 0.0)) {
        throw Error(Errc::InvalidArgument, "threshold must be a negative dB value");
    }
}

AngleTrace trace_angle(double theta_deg, const FrequencySweep& dut, const FrequencySweep& ref,
                       const PipelineOptions& options) {
    options.validate();
    if (!(dut.grid() == ref.grid()))
        throw Error(Errc::GridMismatch, "DUT and reference sweeps are on different frequency grids");

    auto ref_time = to_time(ref, options.pad_factor);
    auto dut_time = to_time(dut, options.pad_factor);
    const GateReport report = locate_gate(ref_time, options);

    Diagnostics diagnostics;
    if (report.gate.t_stop > 0.95 * ref_time.alias_span())
        diagnostics.warn("gate ends within the last 5% of the alias window; later returns wrap around");

    auto ref_gated = apply_gate(ref_time, report.gate);
    auto dut_gated = apply_gate(dut_time, report.gate);
    auto cut = make_cut(theta_deg, to_freq(dut_gated, dut.size()), to_freq(ref_gated, ref.size()));
    return {std::move(ref_time), std::move(dut_time), std::move(ref_gated), std::move(dut_gated),
            report,              std::move(cut),      std::move(diagnostics)};
}

AngleResult process_angle(double theta_deg, const FrequencySweep& dut, const FrequencySweep& ref,
                          const PipelineOptions& options) {
    auto trace = trace_angle(theta_deg, dut, ref, options);
    return {std::move(trace.cut), trace.report, std::move(trace.diagnostics)};
}

namespace {

// Runs body(i) for every index, keeping the first failure in index order.
template <class Body>
void for_each_angle(std::size_t count, Execution execution, const std::vector<double>& thetas, Body body) {
    std::vector<std::exception_ptr> failures(count);
    const auto n = static_cast<std::ptrdiff_t>(count);
    const auto guarded = [&](std::ptrdiff_t i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    };
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) guarded(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            guarded(i);
            if (failures[static_cast<std::size_t>(i)]) break;
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (!failures[i]) continue;
        try {
            std::rethrow_exception(failures[i]);
        } catch (const Error& e) {
            throw Error(e.code(), angle_prefix(thetas[i]) + e.detail());
        } catch (const std::exception& e) {
            throw Error(Errc::InvalidArgument, angle_prefix(thetas[i]) + e.what());
        }
    }
}

}  // namespace

std::vector<AngleResult> process_angles(std::span<const AngleInput> inputs, const PipelineOptions& options,
                                        Execution execution) {
    options.validate();
    std::vector<double> thetas;
    for (const auto& in : inputs) thetas.push_back(in.theta_deg);
    std::vector<std::optional<AngleResult>> slots(inputs.size());
    for_each_angle(inputs.size(), execution, thetas, [&](std::size_t i) {
        slots[i] = process_angle(inputs[i].theta_deg, inputs[i].dut, inputs[i].ref, options);
    });
    std::vector<AngleResult> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<AngleResult> process_campaign(const CampaignManifest& manifest, const PipelineOptions& options,
                                          Execution execution) {
    manifest.validate();
    options.validate();
    const auto thetas = manifest.angles();
    std::vector<std::optional<AngleResult>> slots(thetas.size());
    for_each_angle(thetas.size(), execution, thetas, [&](std::size_t i) {
        const auto& entry = manifest.entries[i];
        const auto pair = load_angle(entry);
        slots[i] = process_angle(entry.angle_deg, pair.dut, pair.ref, options);
    });
    std::vector<AngleResult> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace rcsgate

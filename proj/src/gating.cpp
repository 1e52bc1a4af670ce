#include "rcsgate/gating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rcsgate/text.hpp"

namespace rcsgate {
namespace {

std::string ns(double seconds) { return text::format_double(seconds * 1e9) + " ns"; }

// Tolerance, in samples, for gate edges that fall on a sample time.
constexpr double kEdgeSlack = 1e-9;

struct SampleRange {
    std::size_t first;
    std::size_t last;  // inclusive
};

SampleRange in_gate_samples(const TimeResponse& time, const GateSpec& gate) {
    const double dt = time.dt();
    const double lo = std::ceil(gate.t_start / dt - kEdgeSlack);
    const double hi = std::min(std::floor(gate.t_stop / dt + kEdgeSlack), static_cast<double>(time.size() - 1));
    if (hi < lo)
        throw Error(Errc::GateCollapsed, "gate [" + ns(gate.t_start) + ", " + ns(gate.t_stop) +
                                             "] contains no sample of a " + ns(dt) + " grid");
    return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

std::size_t argmax_magnitude(std::span<const Complex> values, std::size_t first, std::size_t last) {
    std::size_t best = first;
    double best_mag = -1.0;
    for (std::size_t k = first; k <= last; ++k) {
        const double mag = std::abs(values[k]);
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    return best;
}

GateReport make_report(const TimeResponse& time, const GateSpec& gate, std::size_t peak) {
    const auto range = in_gate_samples(time, gate);
    const double peak_mag = std::abs(time[peak]);
    double outside = 0.0;
    for (std::size_t k = 0; k < time.size(); ++k)
        if (k < range.first || k > range.last) outside = std::max(outside, std::abs(time[k]));
    GateReport report;
    report.gate = gate;
    report.peak_time = time.time(peak);
    report.peak_magnitude = peak_mag / static_cast<double>(time.band().size());
    report.suppression_db =
        outside > 0.0 ? 20.0 * std::log10(peak_mag / outside) : std::numeric_limits<double>::infinity();
    return report;
}

}  // namespace

void GateSpec::validate(double alias_span) const {
    if (!std::isfinite(shape.beta) || shape.beta < 0.0)
        throw Error(Errc::InvalidArgument, "gate beta must be finite and >= 0");
    const double slack = alias_span * 1e-12;
    if (!std::isfinite(t_start) || !std::isfinite(t_stop) || t_start < 0.0 || !(t_start < t_stop) ||
        t_stop > alias_span + slack)
        throw Error(Errc::GateOutsideAxis, "gate [" + ns(t_start) + ", " + ns(t_stop) + "] is not inside [0, " +
                                               ns(alias_span) + "]");
}

GateReport detect_gate(const TimeResponse& reference, const GateDetection& mode, double beta) {
    const auto values = reference.values();
    const std::size_t peak = argmax_magnitude(values, 0, values.size() - 1);
    const double peak_mag = std::abs(values[peak]);
    if (!(peak_mag > 0.0)) throw Error(Errc::NoPeak, "reference time response is identically zero");

    const double dt = reference.dt();
    const double alias = reference.alias_span();
    GateSpec gate;
    gate.shape.beta = beta;

    if (const auto* hw = std::get_if<HalfWidth>(&mode)) {
        if (!std::isfinite(hw->seconds) || !(hw->seconds > 0.0))
            throw Error(Errc::InvalidArgument, "gate half width must be positive");
        const double tp = reference.time(peak);
        gate.t_start = std::max(0.0, tp - hw->seconds);
        gate.t_stop = std::min(alias, tp + hw->seconds);
    } else {
        const double db = std::get<ThresholdDb>(mode).db;
        if (!std::isfinite(db) || !(db < 0.0)) throw Error(Errc::InvalidArgument, "gate threshold must be negative dB");
        const double level = peak_mag * std::pow(10.0, db / 20.0);
        std::size_t lo = peak;
        std::size_t hi = peak;
        while (lo > 0 && std::abs(values[lo - 1]) >= level) --lo;
        while (hi + 1 < values.size() && std::abs(values[hi + 1]) >= level) ++hi;
        if (lo == hi)
            throw Error(Errc::GateCollapsed, "only the peak sample at " + ns(reference.time(peak)) + " is within " +
                                                 text::format_double(db) + " dB");
        gate.t_start = static_cast<double>(lo) * dt;
        gate.t_stop = static_cast<double>(hi) * dt;
    }
    gate.validate(alias);
    return make_report(reference, gate, peak);
}

GateReport describe_gate(const TimeResponse& reference, const GateSpec& gate) {
    gate.validate(reference.alias_span());
    const auto range = in_gate_samples(reference, gate);
    const std::size_t peak = argmax_magnitude(reference.values(), range.first, range.last);
    if (!(std::abs(reference[peak]) > 0.0))
        throw Error(Errc::NoPeak, "reference response is zero inside [" + ns(gate.t_start) + ", " + ns(gate.t_stop) + "]");
    return make_report(reference, gate, peak);
}

std::vector<double> gate_weights(const TimeResponse& time, const GateSpec& gate) {
    gate.validate(time.alias_span());
    const auto range = in_gate_samples(time, gate);
    const auto taper = kaiser_weights(range.last - range.first + 1, gate.shape.beta);
    std::vector<double> w(time.size(), 0.0);
    std::copy(taper.begin(), taper.end(), w.begin() + static_cast<std::ptrdiff_t>(range.first));
    return w;
}

TimeResponse apply_gate(const TimeResponse& time, const GateSpec& gate) {
    const auto w = gate_weights(time, gate);
    std::vector<Complex> out(time.values().begin(), time.values().end());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] *= w[k];
    return {time.band(), std::move(out)};
}

FrequencySweep gate_sweep(const FrequencySweep& sweep, const GateSpec& gate, std::size_t pad_factor,
                          Diagnostics* diagnostics) {
    const auto time = to_time(sweep, pad_factor);
    const double alias = time.alias_span();
    if (diagnostics && gate.t_stop > 0.95 * alias)
        diagnostics->warn("gate ends at " + ns(gate.t_stop) + ", within the last 5% of the " + ns(alias) +
                          " alias window; later returns wrap around");
    return to_freq(apply_gate(time, gate), sweep.size());
}

}  // namespace rcsgate

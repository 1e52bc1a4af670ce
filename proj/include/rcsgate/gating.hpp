#pragma once

#include <cstddef>
#include <variant>

#include "rcsgate/error.hpp"
#include "rcsgate/spectral.hpp"
#include "rcsgate/sweep.hpp"

namespace rcsgate {

inline constexpr double kDefaultBeta = 13.0;
inline constexpr double kDefaultHalfWidth = 1e-9;

/// Time interval kept by the gate, with the Kaiser shape applied across it.
struct GateSpec {
    double t_start = 0.0;
    double t_stop = 0.0;
    WindowShape shape{kDefaultBeta};

    double width() const noexcept { return t_stop - t_start; }
    /// 0 <= t_start < t_stop <= alias_span, beta finite and >= 0.
    void validate(double alias_span) const;
};

struct GateReport {
    GateSpec gate;
    double peak_time = 0.0;
    /// |X(peak)| / N, i.e. the amplitude of an equivalent point scatterer.
    double peak_magnitude = 0.0;
    /// Peak level over the strongest sample left outside the gate, in dB
    /// (positive). Infinite when nothing lies outside the gate.
    double suppression_db = 0.0;
};

struct HalfWidth {
    double seconds = kDefaultHalfWidth;
};
struct ThresholdDb {
    double db = -20.0;
};
using GateDetection = std::variant<HalfWidth, ThresholdDb>;

/// Locates the gate around the strongest return of a (reference) response.
GateReport detect_gate(const TimeResponse& reference, const GateDetection& mode,
                       double beta = kDefaultBeta);

/// Report for a manually chosen gate: peak and suppression measured inside it.
GateReport describe_gate(const TimeResponse& reference, const GateSpec& gate);

/// Per-sample gate weights on the response's time axis: zero outside the
/// gate, Kaiser taper across the in-gate samples.
std::vector<double> gate_weights(const TimeResponse& time, const GateSpec& gate);

TimeResponse apply_gate(const TimeResponse& time, const GateSpec& gate);

/// to_freq(apply_gate(to_time(sweep, pad), gate)) on the sweep's own grid.
FrequencySweep gate_sweep(const FrequencySweep& sweep, const GateSpec& gate,
                          std::size_t pad_factor = kDefaultPadFactor, Diagnostics* diagnostics = nullptr);

}  // namespace rcsgate

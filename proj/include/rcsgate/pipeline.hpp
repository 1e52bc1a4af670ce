#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rcsgate/error.hpp"
#include "rcsgate/gating.hpp"
#include "rcsgate/manifest.hpp"
#include "rcsgate/rcs.hpp"

namespace rcsgate {

struct PipelineOptions {
    std::size_t pad_factor = kDefaultPadFactor;
    double beta = kDefaultBeta;
    /// Manual gate [t_start, t_stop]; skips detection when set.
    std::optional<std::pair<double, double>> manual_gate;
    GateDetection detection = HalfWidth{};

    void validate() const;
};

/// Every intermediate of one angle (time responses before and after gating).
struct AngleTrace {
    TimeResponse ref_time;
    TimeResponse dut_time;
    TimeResponse ref_time_gated;
    TimeResponse dut_time_gated;
    GateReport report;
    AngleCut cut;
    Diagnostics diagnostics;
};

struct AngleResult {
    AngleCut cut;
    GateReport report;
    Diagnostics diagnostics;
};

/// One pass of the per-angle loop: transform, gate detected on the
/// reference, same gate on the DUT, back to frequency, RCSR.
AngleTrace trace_angle(double theta_deg, const FrequencySweep& dut, const FrequencySweep& ref,
                       const PipelineOptions& options);
AngleResult process_angle(double theta_deg, const FrequencySweep& dut, const FrequencySweep& ref,
                          const PipelineOptions& options);

enum class Execution { Serial, Parallel };

struct AngleInput {
    double theta_deg;
    FrequencySweep dut;
    FrequencySweep ref;
};

/// Runs every angle; results are in input order and independent of the
/// execution mode. The first failing angle (in order) aborts the run with
/// its angle named.
std::vector<AngleResult> process_angles(std::span<const AngleInput> inputs, const PipelineOptions& options,
                                        Execution execution = Execution::Parallel);

/// As above, loading the sweeps from a manifest.
std::vector<AngleResult> process_campaign(const CampaignManifest& manifest, const PipelineOptions& options,
                                          Execution execution = Execution::Parallel);

}  // namespace rcsgate

#pragma once

#include <cstddef>
#include <vector>

#include "rcsgate/sweep.hpp"

namespace rcsgate {

/// Modified Bessel function of the first kind, order zero, for x >= 0.
double bessel_i0(double x);

/// Kaiser taper w[n] = I0(β·sqrt(1 − (2n/(L−1) − 1)²)) / I0(β).
/// Exactly symmetric; length 1 yields {1.0}.
std::vector<double> kaiser_weights(std::size_t length, double beta);

struct WindowShape {
    double beta = 13.0;
};

enum class TransformBackend {
    Fast,            // FftPlan
    Direct,          // O(N²) serial reference
    DirectParallel,  // O(N²) OpenMP
};

inline constexpr std::size_t kDefaultPadFactor = 4;

/// Frequency sweep -> time response. The N samples are zero padded to
/// pad_factor·N and transformed with X_k = Σ x_n e^{+i2πkn/M}; a delay τ shows
/// up at t ≈ τ mod (1/Δf) with dt = 1/(M·Δf).
TimeResponse to_time(const FrequencySweep& sweep, std::size_t pad_factor = kDefaultPadFactor,
                     TransformBackend backend = TransformBackend::Fast);

/// Inverse of to_time: x_n = (1/M) Σ X_k e^{−i2πkn/M}, keeping the first
/// original_n bins. Throws LengthMismatch unless M is a multiple of original_n
/// equal to the source grid's point count times the pad factor.
FrequencySweep to_freq(const TimeResponse& time, std::size_t original_n,
                       TransformBackend backend = TransformBackend::Fast);

}  // namespace rcsgate

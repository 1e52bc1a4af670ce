#include "rcsgate/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rcsgate/error.hpp"
#include "rcsgate/kernels.hpp"

namespace rcsgate {
namespace {

// Power series Σ ((x/2)^m / m!)²; every term is positive so it converges
// without cancellation.
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 500; ++m) {
        term *= q / (static_cast<double>(m) * m);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// Large-argument expansion e^x/√(2πx) · Σ ((2k−1)!!)² / (k!·(8x)^k), cut at
// its smallest term.
double i0_asymptotic(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 1e-17) break;
    }
    return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * sum;
}

constexpr double kAsymptoticFrom = 20.0;

void run_transform(std::span<const Complex> in, std::span<Complex> out, int sign, TransformBackend backend) {
    switch (backend) {
        case TransformBackend::Fast: kernels::FftPlan(in.size(), sign).execute(in, out); return;
        case TransformBackend::Direct: kernels::dft_serial(in, out, sign); return;
        case TransformBackend::DirectParallel: kernels::dft_parallel(in, out, sign); return;
    }
}

}  // namespace

double bessel_i0(double x) {
    if (!std::isfinite(x) || x < 0.0) throw Error(Errc::InvalidArgument, "bessel_i0 needs a finite x >= 0");
    return x < kAsymptoticFrom ? i0_series(x) : i0_asymptotic(x);
}

std::vector<double> kaiser_weights(std::size_t length, double beta) {
    if (length == 0) throw Error(Errc::InvalidArgument, "window length must be >= 1");
    if (!std::isfinite(beta) || beta < 0.0) throw Error(Errc::InvalidArgument, "kaiser beta must be finite and >= 0");
    std::vector<double> w(length, 1.0);
    if (length == 1 || beta == 0.0) return w;

    const double denom = bessel_i0(beta);
    const double span = static_cast<double>(length - 1);
    // Fill the first half and mirror it, so w[n] == w[L−1−n] bit for bit.
    for (std::size_t n = 0; n < (length + 1) / 2; ++n) {
        const double t = 2.0 * static_cast<double>(n) / span - 1.0;
        const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
        w[n] = bessel_i0(beta * r) / denom;
        w[length - 1 - n] = w[n];
    }
    if (length % 2 == 1) w[length / 2] = 1.0;
    return w;
}

TimeResponse to_time(const FrequencySweep& sweep, std::size_t pad_factor, TransformBackend backend) {
    if (pad_factor < 1) throw Error(Errc::InvalidArgument, "pad factor must be >= 1");
    const std::size_t m = sweep.size() * pad_factor;
    std::vector<Complex> padded(m, Complex{});
    std::copy(sweep.values().begin(), sweep.values().end(), padded.begin());
    std::vector<Complex> out(m);
    run_transform(padded, out, +1, backend);
    return {sweep.grid(), std::move(out)};
}

FrequencySweep to_freq(const TimeResponse& time, std::size_t original_n, TransformBackend backend) {
    const std::size_t m = time.size();
    if (original_n < 2 || m % original_n != 0 || original_n != time.band().size())
        throw Error(Errc::LengthMismatch, "time response of " + std::to_string(m) + " samples cannot map back to " +
                                              std::to_string(original_n) + " frequency points of a " +
                                              std::to_string(time.band().size()) + "-point band");
    std::vector<Complex> out(m);
    run_transform(time.values(), out, -1, backend);
    out.resize(original_n);
    const double scale = 1.0 / static_cast<double>(m);
    for (auto& v : out) v *= scale;
    return {time.band(), std::move(out)};
}

}  // namespace rcsgate

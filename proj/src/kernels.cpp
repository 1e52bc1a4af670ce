#include "rcsgate/kernels.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "rcsgate/error.hpp"

namespace rcsgate::kernels {
namespace {

void check_sizes(std::span<const Complex> in, std::span<Complex> out, int sign) {
    if (in.size() != out.size() || in.empty())
        throw Error(Errc::LengthMismatch, "transform input/output sizes differ or are empty");
    if (sign != 1 && sign != -1) throw Error(Errc::InvalidArgument, "transform sign must be +1 or -1");
}

std::vector<Complex> unit_roots(std::size_t m, int sign) {
    std::vector<Complex> tw(m);
    const double base = 2.0 * std::numbers::pi / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) tw[j] = std::polar(1.0, sign * base * static_cast<double>(j));
    return tw;
}

Complex dft_bin(std::span<const Complex> in, std::span<const Complex> tw, std::size_t k) {
    const std::size_t m = in.size();
    Complex acc{0.0, 0.0};
    std::size_t idx = 0;  // (k·n) mod m
    for (std::size_t n = 0; n < m; ++n) {
        acc += in[n] * tw[idx];
        idx += k;
        if (idx >= m) idx -= m;
    }
    return acc;
}

}  // namespace

void dft_serial(std::span<const Complex> in, std::span<Complex> out, int sign) {
    check_sizes(in, out, sign);
    const auto tw = unit_roots(in.size(), sign);
    for (std::size_t k = 0; k < in.size(); ++k) out[k] = dft_bin(in, tw, k);
}

void dft_parallel(std::span<const Complex> in, std::span<Complex> out, int sign) {
    check_sizes(in, out, sign);
    const auto tw = unit_roots(in.size(), sign);
    const auto m = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < m; ++k) out[k] = dft_bin(in, tw, static_cast<std::size_t>(k));
}

void radix2_inplace(std::span<Complex> data, std::span<const Complex> twiddles, bool inverse) {
    const std::size_t n = data.size();
    if (n <= 1) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const Complex w = inverse ? std::conj(twiddles[j * stride]) : twiddles[j * stride];
                const Complex u = data[start + j];
                const Complex v = data[start + j + half] * w;
                data[start + j] = u + v;
                data[start + j + half] = u - v;
            }
        }
    }
}

FftPlan::FftPlan(std::size_t size, int sign) : size_(size), sign_(sign) {
    if (size == 0) throw Error(Errc::InvalidArgument, "transform size must be positive");
    if (sign != 1 && sign != -1) throw Error(Errc::InvalidArgument, "transform sign must be +1 or -1");

    if (std::has_single_bit(size)) {
        conv_size_ = size;
        twiddles_ = unit_roots(size, -1);
        twiddles_.resize(size / 2);
        return;
    }

    // Bluestein: kn = (k² + n² − (k−n)²)/2 turns the DFT into a convolution
    // with the chirp c_n = exp(sign·iπ·n²/M).
    conv_size_ = std::bit_ceil(2 * size - 1);
    twiddles_ = unit_roots(conv_size_, -1);
    twiddles_.resize(conv_size_ / 2);

    chirp_.resize(size);
    const std::uint64_t period = 2 * static_cast<std::uint64_t>(size);
    for (std::size_t n = 0; n < size; ++n) {
        const std::uint64_t sq = (static_cast<std::uint64_t>(n) * n) % period;
        chirp_[n] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(sq) / static_cast<double>(size));
    }
    chirp_filter_.assign(conv_size_, Complex{});
    chirp_filter_[0] = std::conj(chirp_[0]);
    for (std::size_t m = 1; m < size; ++m) {
        chirp_filter_[m] = std::conj(chirp_[m]);
        chirp_filter_[conv_size_ - m] = std::conj(chirp_[m]);
    }
    radix2_inplace(chirp_filter_, twiddles_, false);
}

void FftPlan::execute(std::span<const Complex> in, std::span<Complex> out) const {
    if (in.size() != size_ || out.size() != size_)
        throw Error(Errc::LengthMismatch, "plan size " + std::to_string(size_) + " does not match buffers");

    if (chirp_.empty()) {
        std::copy(in.begin(), in.end(), out.begin());
        // twiddles_ hold e^{-i...}; a positive sign is the conjugate pass.
        radix2_inplace(out, twiddles_, sign_ > 0);
        return;
    }

    std::vector<Complex> work(conv_size_, Complex{});
    for (std::size_t n = 0; n < size_; ++n) work[n] = in[n] * chirp_[n];
    radix2_inplace(work, twiddles_, false);
    for (std::size_t j = 0; j < conv_size_; ++j) work[j] *= chirp_filter_[j];
    radix2_inplace(work, twiddles_, true);
    const double scale = 1.0 / static_cast<double>(conv_size_);
    for (std::size_t k = 0; k < size_; ++k) out[k] = chirp_[k] * work[k] * scale;
}

}  // namespace rcsgate::kernels

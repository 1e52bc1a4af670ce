#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rcsgate/sweep.hpp"

// Discrete Fourier kernels computing
//
//     out[k] = sum_n in[n] · exp(sign · i·2π·k·n / M),   M = in.size()
//
// without normalisation. Three interchangeable routes:
//   dft_serial    O(M²) reference, kept for testing
//   dft_parallel  O(M²), output bins split across OpenMP threads
//   FftPlan       O(M log M): radix-2 for powers of two, Bluestein otherwise
// All three agree to ~1e-12 relative.
namespace rcsgate::kernels {

void dft_serial(std::span<const Complex> in, std::span<Complex> out, int sign);
void dft_parallel(std::span<const Complex> in, std::span<Complex> out, int sign);

class FftPlan {
public:
    FftPlan(std::size_t size, int sign);

    std::size_t size() const noexcept { return size_; }
    int sign() const noexcept { return sign_; }

    void execute(std::span<const Complex> in, std::span<Complex> out) const;

private:
    std::size_t size_;
    int sign_;
    // power-of-two path (or the Bluestein convolution length)
    std::size_t conv_size_ = 0;
    std::vector<Complex> twiddles_;      // forward twiddles for conv_size_
    std::vector<Complex> chirp_;         // Bluestein only: exp(sign·iπn²/M)
    std::vector<Complex> chirp_filter_;  // Bluestein only: FFT of conj chirp
};

/// In-place iterative radix-2 transform with a precomputed twiddle table of
/// size n/2 for e^{-i2πj/n}; `inverse` conjugates the twiddles (unnormalised).
void radix2_inplace(std::span<Complex> data, std::span<const Complex> twiddles, bool inverse);

}  // namespace rcsgate::kernels

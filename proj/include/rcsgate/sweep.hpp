#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rcsgate {

using Complex = std::complex<double>;

/// Uniform frequency axis. The spacing is implied by the end points and the
/// point count and is never stored separately.
class FrequencyGrid {
public:
    /// Requires f_stop > f_start > 0 and n_points >= 2.
    FrequencyGrid(double f_start, double f_stop, std::size_t n_points);

    double start() const noexcept { return start_; }
    double stop() const noexcept { return stop_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return (stop_ - start_) / static_cast<double>(n_ - 1); }
    /// 1/Δf: the longest delay representable without wrapping.
    double alias_span() const noexcept { return 1.0 / spacing(); }
    double frequency(std::size_t index) const noexcept;
    bool contains(double f) const noexcept;

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

private:
    double start_;
    double stop_;
    std::size_t n_;
};

/// Complex reflection coefficient sampled on a FrequencyGrid.
class FrequencySweep {
public:
    FrequencySweep(FrequencyGrid grid, std::vector<Complex> values);

    const FrequencyGrid& grid() const noexcept { return grid_; }
    std::span<const Complex> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const Complex& operator[](std::size_t i) const noexcept { return values_[i]; }

    FrequencySweep scaled(Complex factor) const;

private:
    FrequencyGrid grid_;
    std::vector<Complex> values_;
};

/// Time-domain image of a sweep: sample k sits at t = k·dt with
/// dt = 1/(M·Δf), M = values.size() (a multiple of the source point count when
/// zero padded). The source band is kept so the inverse can restore the grid.
class TimeResponse {
public:
    TimeResponse(FrequencyGrid band, std::vector<Complex> values);

    const FrequencyGrid& band() const noexcept { return band_; }
    std::span<const Complex> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const Complex& operator[](std::size_t k) const noexcept { return values_[k]; }

    double dt() const noexcept { return 1.0 / (static_cast<double>(values_.size()) * band_.spacing()); }
    double alias_span() const noexcept { return band_.alias_span(); }
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt(); }

private:
    FrequencyGrid band_;
    std::vector<Complex> values_;
};

}  // namespace rcsgate

#include "rcsgate/sweep.hpp"

#include <cmath>
#include <string>

#include "rcsgate/error.hpp"

namespace rcsgate {

FrequencyGrid::FrequencyGrid(double f_start, double f_stop, std::size_t n_points)
    : start_(f_start), stop_(f_stop), n_(n_points) {
    if (!std::isfinite(f_start) || !std::isfinite(f_stop) || !(f_start > 0.0) || !(f_stop > f_start))
        throw Error(Errc::InvalidArgument, "frequency grid needs f_stop > f_start > 0, got [" +
                                               std::to_string(f_start) + ", " + std::to_string(f_stop) + "]");
    if (n_points < 2) throw Error(Errc::InvalidArgument, "frequency grid needs at least 2 points");
}

double FrequencyGrid::frequency(std::size_t index) const noexcept {
    if (index + 1 == n_) return stop_;
    return start_ + static_cast<double>(index) * spacing();
}

bool FrequencyGrid::contains(double f) const noexcept {
    const double slack = 1e-9 * spacing();
    return f >= start_ - slack && f <= stop_ + slack;
}

FrequencySweep::FrequencySweep(FrequencyGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw Error(Errc::LengthMismatch, "sweep has " + std::to_string(values_.size()) + " values for a " +
                                              std::to_string(grid_.size()) + "-point grid");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag()))
            throw Error(Errc::InvalidArgument, "non-finite sweep value at " + std::to_string(grid_.frequency(i)) + " Hz");
    }
}

FrequencySweep FrequencySweep::scaled(Complex factor) const {
    std::vector<Complex> out(values_);
    for (auto& v : out) v *= factor;
    return {grid_, std::move(out)};
}

TimeResponse::TimeResponse(FrequencyGrid band, std::vector<Complex> values)
    : band_(band), values_(std::move(values)) {
    if (values_.size() < 2) throw Error(Errc::LengthMismatch, "time response needs at least 2 samples");
}

}  // namespace rcsgate

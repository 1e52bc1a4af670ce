#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rcsgate {

enum class Errc {
    InvalidArgument,
    MalformedOptionLine,
    MultiPortData,
    NonUniformGrid,
    NonMonotonicFrequency,
    EmptyData,
    MissingHeader,
    BadRow,
    GridMismatch,
    GapBetweenBands,
    InvalidManifest,
    LengthMismatch,
    NoPeak,
    GateCollapsed,
    GateOutsideAxis,
    ReferenceNull,
    OutOfBand,
    DuplicateAngle,
    InvalidScript,
    Io,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending line, frequency or angle where one exists.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }
    /// Message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

/// Non-fatal findings (alias warnings, gate near the end of the alias window).
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
    bool empty() const noexcept { return warnings.empty(); }
};

}  // namespace rcsgate

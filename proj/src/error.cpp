#include "rcsgate/error.hpp"

namespace rcsgate {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::MalformedOptionLine: return "MalformedOptionLine";
        case Errc::MultiPortData: return "MultiPortData";
        case Errc::NonUniformGrid: return "NonUniformGrid";
        case Errc::NonMonotonicFrequency: return "NonMonotonicFrequency";
        case Errc::EmptyData: return "EmptyData";
        case Errc::MissingHeader: return "MissingHeader";
        case Errc::BadRow: return "BadRow";
        case Errc::GridMismatch: return "GridMismatch";
        case Errc::GapBetweenBands: return "GapBetweenBands";
        case Errc::InvalidManifest: return "InvalidManifest";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::NoPeak: return "NoPeak";
        case Errc::GateCollapsed: return "GateCollapsed";
        case Errc::GateOutsideAxis: return "GateOutsideAxis";
        case Errc::ReferenceNull: return "ReferenceNull";
        case Errc::OutOfBand: return "OutOfBand";
        case Errc::DuplicateAngle: return "DuplicateAngle";
        case Errc::InvalidScript: return "InvalidScript";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace rcsgate

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rcsgate/sweep.hpp"

namespace rcsgate {

/// One bistatic angle of a campaign. Each side may be split over several
/// frequency bands; they are stitched on load.
struct CampaignEntry {
    double angle_deg = 0.0;
    std::vector<std::filesystem::path> dut_bands;
    std::vector<std::filesystem::path> ref_bands;
};

struct CampaignManifest {
    std::vector<CampaignEntry> entries;

    /// Angles strictly increasing, each in [1, 90], both sides present.
    void validate() const;
    std::vector<double> angles() const;
    /// nullptr when the angle is not part of the campaign.
    const CampaignEntry* find(double angle_deg) const noexcept;
};

inline constexpr std::string_view kManifestFileName = "manifest.tsv";

/// Line format: angle_deg<TAB>dut_path<TAB>ref_path, '#' comments. A path
/// field may list several band files separated by ';'. Relative paths are
/// resolved against `base_dir`.
CampaignManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);

/// Paths under `base_dir` are written relative to it.
std::string write_manifest(const CampaignManifest& manifest, const std::filesystem::path& base_dir);

/// Directory convention: angle_<deg>/dut.s1p and angle_<deg>/ref.s1p.
CampaignManifest discover_campaign(const std::filesystem::path& dir);

/// Accepts a manifest file, or a directory holding manifest.tsv or following
/// the angle_<deg>/ convention.
CampaignManifest load_manifest(const std::filesystem::path& path);

struct AnglePair {
    FrequencySweep dut;
    FrequencySweep ref;
};

/// Loads (and stitches, when banded) both sweeps of one entry.
AnglePair load_angle(const CampaignEntry& entry);

}  // namespace rcsgate

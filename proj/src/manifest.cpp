#include "rcsgate/manifest.hpp"

#include <algorithm>
#include <cmath>

#include "rcsgate/error.hpp"
#include "rcsgate/ingest.hpp"
#include "rcsgate/text.hpp"

namespace fs = std::filesystem;

namespace rcsgate {
namespace {

constexpr double kAngleMatch = 1e-9;

std::vector<fs::path> parse_paths(std::string_view field, const fs::path& base_dir, std::size_t line_no) {
    std::vector<fs::path> out;
    for (auto part : text::split(field, ';')) {
        part = text::trim(part);
        if (part.empty())
            throw Error(Errc::InvalidManifest, "line " + std::to_string(line_no) + ": empty path");
        fs::path p{std::string(part)};
        out.push_back(p.is_absolute() ? p : base_dir / p);
    }
    return out;
}

std::string format_paths(const std::vector<fs::path>& paths, const fs::path& base_dir) {
    std::string out;
    for (const auto& p : paths) {
        if (!out.empty()) out += ';';
        const fs::path rel = p.lexically_relative(base_dir);
        const bool inside = !rel.empty() && *rel.begin() != "..";
        out += (inside ? rel : p).generic_string();
    }
    return out;
}

}  // namespace

void CampaignManifest::validate() const {
    if (entries.empty()) throw Error(Errc::InvalidManifest, "campaign has no angles");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const std::string where = "angle " + text::format_double(e.angle_deg);
        if (!std::isfinite(e.angle_deg) || e.angle_deg < 1.0 || e.angle_deg > 90.0)
            throw Error(Errc::InvalidManifest, where + ": angles must lie in [1, 90] degrees");
        if (e.dut_bands.empty() || e.ref_bands.empty())
            throw Error(Errc::InvalidManifest, where + ": needs both a DUT and a reference sweep");
        if (i > 0 && std::abs(e.angle_deg - entries[i - 1].angle_deg) <= kAngleMatch)
            throw Error(Errc::DuplicateAngle, where + " appears twice");
        if (i > 0 && !(e.angle_deg > entries[i - 1].angle_deg))
            throw Error(Errc::InvalidManifest, where + ": angles must be strictly increasing");
    }
}

std::vector<double> CampaignManifest::angles() const {
    std::vector<double> out;
    for (const auto& e : entries) out.push_back(e.angle_deg);
    return out;
}

const CampaignEntry* CampaignManifest::find(double angle_deg) const noexcept {
    for (const auto& e : entries)
        if (std::abs(e.angle_deg - angle_deg) <= kAngleMatch) return &e;
    return nullptr;
}

CampaignManifest parse_manifest(std::string_view contents, const fs::path& base_dir) {
    CampaignManifest manifest;
    const auto all = text::lines(contents);
    for (std::size_t i = 0; i < all.size(); ++i) {
        std::string_view line = all[i];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (text::trim(line).empty()) continue;
        const auto fields = text::split(line, '\t');
        if (fields.size() != 3)
            throw Error(Errc::InvalidManifest, "line " + std::to_string(i + 1) +
                                                   ": expected angle_deg<TAB>dut_path<TAB>ref_path");
        const auto angle = text::parse_double(fields[0]);
        if (!angle)
            throw Error(Errc::InvalidManifest, "line " + std::to_string(i + 1) + ": bad angle '" +
                                                   std::string(text::trim(fields[0])) + "'");
        manifest.entries.push_back({*angle, parse_paths(fields[1], base_dir, i + 1),
                                    parse_paths(fields[2], base_dir, i + 1)});
    }
    manifest.validate();
    return manifest;
}

std::string write_manifest(const CampaignManifest& manifest, const fs::path& base_dir) {
    std::string out = "# angle_deg\tdut_path\tref_path\n";
    for (const auto& e : manifest.entries) {
        out += text::format_double(e.angle_deg);
        out += '\t';
        out += format_paths(e.dut_bands, base_dir);
        out += '\t';
        out += format_paths(e.ref_bands, base_dir);
        out += '\n';
    }
    return out;
}

CampaignManifest discover_campaign(const fs::path& dir) {
    CampaignManifest manifest;
    std::error_code ec;
    for (const auto& item : fs::directory_iterator(dir, ec)) {
        if (!item.is_directory()) continue;
        const std::string name = item.path().filename().string();
        if (!name.starts_with("angle_")) continue;
        const auto angle = text::parse_double(std::string_view(name).substr(6));
        if (!angle) continue;
        const fs::path dut = item.path() / "dut.s1p";
        const fs::path ref = item.path() / "ref.s1p";
        if (!fs::exists(dut) || !fs::exists(ref))
            throw Error(Errc::InvalidManifest, item.path().string() + ": needs dut.s1p and ref.s1p");
        manifest.entries.push_back({*angle, {dut}, {ref}});
    }
    if (ec) throw Error(Errc::Io, "cannot list '" + dir.string() + "': " + ec.message());
    std::sort(manifest.entries.begin(), manifest.entries.end(),
              [](const CampaignEntry& a, const CampaignEntry& b) { return a.angle_deg < b.angle_deg; });
    manifest.validate();
    return manifest;
}

CampaignManifest load_manifest(const fs::path& path) {
    if (fs::is_directory(path)) {
        const fs::path file = path / kManifestFileName;
        if (fs::exists(file)) return parse_manifest(text::read_file(file), path);
        return discover_campaign(path);
    }
    if (!fs::exists(path)) throw Error(Errc::Io, "manifest '" + path.string() + "' does not exist");
    return parse_manifest(text::read_file(path), path.parent_path());
}

AnglePair load_angle(const CampaignEntry& entry) {
    const auto load_side = [](const std::vector<fs::path>& files) {
        std::vector<FrequencySweep> bands;
        for (const auto& f : files) bands.push_back(load_sweep(f));
        return stitch_bands(bands);
    };
    return {load_side(entry.dut_bands), load_side(entry.ref_bands)};
}

}  // namespace rcsgate

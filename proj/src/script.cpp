#include <cmath>
#include <numbers>
#include <string>

#include <json.hpp>

#include "rcsgate/error.hpp"
#include "rcsgate/synth.hpp"
#include "rcsgate/units.hpp"

namespace rcsgate {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& why) {
    throw Error(Errc::InvalidScript, where + ": " + why);
}

void only_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) fail(where, "unknown key '" + key + "'");
    }
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing '") + key + "'");
    return obj[key];
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    return v.get<double>();
}

double time_value(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return units::parse_time(v.get<std::string>());
        } catch (const Error& e) {
            fail(where, e.detail());
        }
    }
    return number(v, where);
}

double freq_value(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return units::parse_frequency(v.get<std::string>());
        } catch (const Error& e) {
            fail(where, e.detail());
        }
    }
    return number(v, where);
}

Complex amplitude_value(const json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2) return {number(v[0], where), number(v[1], where)};
    if (v.is_object()) {
        only_keys(v, {"mag", "phase_deg"}, where);
        const double mag = number(field(v, "mag", where), where + ".mag");
        const double phase = v.contains("phase_deg") ? number(v["phase_deg"], where + ".phase_deg") : 0.0;
        return std::polar(mag, phase * std::numbers::pi / 180.0);
    }
    fail(where, "amplitude must be a number, [re, im] or {\"mag\", \"phase_deg\"}");
}

ReflectivityProfile profile_value(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where, "expected a non-empty array of [freq, dB(, phase_deg)]");
    ReflectivityProfile profile;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& row = v[i];
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() < 2 || row.size() > 3) fail(at, "expected [freq, dB] or [freq, dB, phase_deg]");
        profile.points.push_back({freq_value(row[0], at), number(row[1], at), row.size() == 3 ? number(row[2], at) : 0.0});
    }
    return profile;
}

TargetTemplate target_value(const json& v, const std::string& where, bool allow_cos) {
    if (allow_cos) only_keys(v, {"delay", "amplitude", "cos_power", "reflectivity"}, where);
    else only_keys(v, {"delay", "amplitude", "reflectivity"}, where);
    TargetTemplate t;
    t.delay = time_value(field(v, "delay", where), where + ".delay");
    if (v.contains("amplitude")) t.amplitude = amplitude_value(v["amplitude"], where + ".amplitude");
    if (v.contains("cos_power")) t.cos_power = number(v["cos_power"], where + ".cos_power");
    if (v.contains("reflectivity")) t.profile = profile_value(v["reflectivity"], where + ".reflectivity");
    return t;
}

std::vector<double> angles_value(const json& v) {
    std::vector<double> out;
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], "angles[" + std::to_string(i) + "]"));
        return out;
    }
    only_keys(v, {"start", "stop", "step"}, "angles");
    const double start = number(field(v, "start", "angles"), "angles.start");
    const double stop = number(field(v, "stop", "angles"), "angles.stop");
    const double step = v.contains("step") ? number(v["step"], "angles.step") : 1.0;
    if (!(step > 0.0) || stop < start) fail("angles", "need start <= stop and step > 0");
    for (std::size_t i = 0;; ++i) {
        const double a = start + static_cast<double>(i) * step;
        if (a > stop + 1e-9 * step) break;
        out.push_back(a);
    }
    return out;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json profile_json(const ReflectivityProfile& p) {
    json rows = json::array();
    for (const auto& pt : p.points) rows.push_back(json::array({pt.freq_hz, pt.level_db, pt.phase_deg}));
    return rows;
}

}  // namespace

CampaignScript parse_script(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::InvalidScript, std::string("not valid JSON: ") + e.what());
    }
    only_keys(doc, {"seed", "noise_floor_db", "angles", "reference", "dut", "clutter"}, "script");

    CampaignScript script;
    script.clutter.clear();
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
        script.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("noise_floor_db") && !doc["noise_floor_db"].is_null())
        script.noise_floor_db = number(doc["noise_floor_db"], "noise_floor_db");
    script.angles_deg = angles_value(field(doc, "angles", "script"));

    const auto targets = [&](const char* key, bool allow_cos) {
        std::vector<TargetTemplate> out;
        if (!doc.contains(key)) return out;
        if (!doc[key].is_array()) fail(key, "expected an array");
        for (std::size_t i = 0; i < doc[key].size(); ++i)
            out.push_back(target_value(doc[key][i], std::string(key) + "[" + std::to_string(i) + "]", allow_cos));
        return out;
    };
    script.reference = targets("reference", true);
    script.dut = targets("dut", true);
    for (const auto& t : targets("clutter", false)) script.clutter.push_back({t.delay, t.amplitude, t.profile});
    script.validate();
    return script;
}

std::string write_script(const CampaignScript& script) {
    json doc;
    doc["seed"] = script.seed;
    doc["noise_floor_db"] = script.noise_floor_db ? json(*script.noise_floor_db) : json(nullptr);
    doc["angles"] = script.angles_deg;
    const auto targets = [](const std::vector<TargetTemplate>& list) {
        json arr = json::array();
        for (const auto& t : list) {
            json o{{"delay", t.delay}, {"amplitude", complex_json(t.amplitude)}, {"cos_power", t.cos_power}};
            if (t.profile) o["reflectivity"] = profile_json(*t.profile);
            arr.push_back(std::move(o));
        }
        return arr;
    };
    doc["reference"] = targets(script.reference);
    doc["dut"] = targets(script.dut);
    json clutter = json::array();
    for (const auto& s : script.clutter) {
        json o{{"delay", s.delay}, {"amplitude", complex_json(s.amplitude)}};
        if (s.profile) o["reflectivity"] = profile_json(*s.profile);
        clutter.push_back(std::move(o));
    }
    doc["clutter"] = std::move(clutter);
    return doc.dump(2) + "\n";
}

}  // namespace rcsgate

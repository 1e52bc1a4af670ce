#include "rcsgate/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rcsgate/error.hpp"
#include "rcsgate/text.hpp"

namespace rcsgate {
namespace {

std::string line_ref(std::size_t line) { return "line " + std::to_string(line); }

std::string freq_ref(double f) { return text::format_double(f) + " Hz"; }

struct OptionLine {
    double unit_scale = 1e9;
    TouchstoneFormat format = TouchstoneFormat::MagAngle;
    double reference_ohms = 50.0;
};

OptionLine parse_option_line(std::string_view line, std::size_t line_no) {
    OptionLine opt;
    const auto tokens = text::split_ws(line.substr(1));
    const auto fail = [&](const std::string& why) {
        throw Error(Errc::MalformedOptionLine, line_ref(line_no) + ": " + why);
    };
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string tok = text::to_lower(tokens[i]);
        if (tok == "hz") opt.unit_scale = 1.0;
        else if (tok == "khz") opt.unit_scale = 1e3;
        else if (tok == "mhz") opt.unit_scale = 1e6;
        else if (tok == "ghz") opt.unit_scale = 1e9;
        else if (tok == "s") {}
        else if (tok == "y" || tok == "z" || tok == "h" || tok == "g")
            fail("only S parameters are supported, got '" + std::string(tokens[i]) + "'");
        else if (tok == "ri") opt.format = TouchstoneFormat::RealImag;
        else if (tok == "ma") opt.format = TouchstoneFormat::MagAngle;
        else if (tok == "db") opt.format = TouchstoneFormat::DecibelAngle;
        else if (tok == "r") {
            if (i + 1 >= tokens.size()) fail("'R' without a reference impedance");
            const auto r = text::parse_double(tokens[++i]);
            if (!r || !(*r > 0.0)) fail("bad reference impedance '" + std::string(tokens[i]) + "'");
            opt.reference_ohms = *r;
        } else {
            fail("unknown token '" + std::string(tokens[i]) + "'");
        }
    }
    return opt;
}

Complex decode_pair(double a, double b, TouchstoneFormat format) {
    constexpr double deg = std::numbers::pi / 180.0;
    switch (format) {
        case TouchstoneFormat::RealImag: return {a, b};
        case TouchstoneFormat::MagAngle: return std::polar(a, b * deg);
        case TouchstoneFormat::DecibelAngle: return std::polar(std::pow(10.0, a / 20.0), b * deg);
    }
    return {};
}

// −300 dB stands in for an exact zero, which has no finite dB value.
constexpr double kDbFloor = -300.0;

std::pair<double, double> encode_pair(Complex v, TouchstoneFormat format) {
    constexpr double deg = 180.0 / std::numbers::pi;
    switch (format) {
        case TouchstoneFormat::RealImag: return {v.real(), v.imag()};
        case TouchstoneFormat::MagAngle: return {std::abs(v), std::arg(v) * deg};
        case TouchstoneFormat::DecibelAngle: {
            const double mag = std::abs(v);
            const double db = mag > 0.0 ? std::max(20.0 * std::log10(mag), kDbFloor) : kDbFloor;
            return {db, std::arg(v) * deg};
        }
    }
    return {};
}

std::string_view format_token(TouchstoneFormat format) {
    switch (format) {
        case TouchstoneFormat::RealImag: return "RI";
        case TouchstoneFormat::MagAngle: return "MA";
        case TouchstoneFormat::DecibelAngle: return "DB";
    }
    return "RI";
}

}  // namespace

FrequencySweep sweep_from_rows(std::span<const double> freqs, std::span<const Complex> values,
                               std::span<const std::size_t> line_numbers) {
    if (freqs.empty()) throw Error(Errc::EmptyData, "no data rows");
    if (freqs.size() < 2)
        throw Error(Errc::EmptyData, line_ref(line_numbers[0]) + ": a sweep needs at least 2 frequency points");
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        if (!std::isfinite(freqs[i]) || !(freqs[i] > 0.0))
            throw Error(Errc::BadRow, line_ref(line_numbers[i]) + ": frequency must be positive and finite");
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
            throw Error(Errc::BadRow, line_ref(line_numbers[i]) + ": non-finite value at " + freq_ref(freqs[i]));
        if (i > 0 && !(freqs[i] > freqs[i - 1]))
            throw Error(Errc::NonMonotonicFrequency,
                        line_ref(line_numbers[i]) + ": frequency " + freq_ref(freqs[i]) + " does not increase");
    }
    const std::size_t n = freqs.size();
    // The first step sets the spacing, so the first deviating row is the one named.
    const double spacing = freqs[1] - freqs[0];
    for (std::size_t i = 2; i < n; ++i) {
        const double step = freqs[i] - freqs[i - 1];
        if (std::abs(step - spacing) > kGridTolerance * spacing)
            throw Error(Errc::NonUniformGrid, line_ref(line_numbers[i]) + ": spacing " + text::format_double(step) +
                                                  " Hz at " + freq_ref(freqs[i]) + " deviates from " +
                                                  text::format_double(spacing) + " Hz");
    }
    return {FrequencyGrid(freqs[0], freqs[n - 1], n), std::vector<Complex>(values.begin(), values.end())};
}

FrequencySweep parse_touchstone(std::string_view text_in) {
    std::optional<OptionLine> option;
    std::vector<double> freqs;
    std::vector<Complex> values;
    std::vector<std::size_t> line_numbers;

    const auto all = text::lines(text_in);
    for (std::size_t idx = 0; idx < all.size(); ++idx) {
        const std::size_t line_no = idx + 1;
        std::string_view line = all[idx];
        if (const auto bang = line.find('!'); bang != std::string_view::npos) line = line.substr(0, bang);
        line = text::trim(line);
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (option) throw Error(Errc::MalformedOptionLine, line_ref(line_no) + ": second option line");
            option = parse_option_line(line, line_no);
            continue;
        }
        if (line.front() == '[')
            throw Error(Errc::MalformedOptionLine, line_ref(line_no) + ": Touchstone v2 keywords are not supported");
        if (!option) throw Error(Errc::MalformedOptionLine, line_ref(line_no) + ": data before the option line");

        const auto tokens = text::split_ws(line);
        if (tokens.size() > 3 && tokens.size() % 2 == 1)
            throw Error(Errc::MultiPortData, line_ref(line_no) + ": multi-port data; only 1-port files are accepted");
        if (tokens.size() != 3)
            throw Error(Errc::BadRow, line_ref(line_no) + ": expected 3 columns, got " + std::to_string(tokens.size()));
        double nums[3];
        for (int c = 0; c < 3; ++c) {
            const auto v = text::parse_double(tokens[c]);
            if (!v) throw Error(Errc::BadRow, line_ref(line_no) + ": not a number: '" + std::string(tokens[c]) + "'");
            nums[c] = *v;
        }
        freqs.push_back(nums[0] * option->unit_scale);
        values.push_back(decode_pair(nums[1], nums[2], option->format));
        line_numbers.push_back(line_no);
    }
    if (!option) throw Error(Errc::MalformedOptionLine, "missing option line");
    return sweep_from_rows(freqs, values, line_numbers);
}

std::string write_touchstone(const FrequencySweep& sweep, TouchstoneFormat format) {
    const auto& g = sweep.grid();
    std::string out;
    out += "! rcsgate 1-port sweep\n";
    out += "! points " + std::to_string(g.size()) + ", " + text::format_double(g.start()) + " Hz to " +
           text::format_double(g.stop()) + " Hz\n";
    out += "# HZ S " + std::string(format_token(format)) + " R 50\n";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto [a, b] = encode_pair(sweep[i], format);
        out += text::format_double(g.frequency(i));
        out += ' ';
        out += text::format_double(a);
        out += ' ';
        out += text::format_double(b);
        out += '\n';
    }
    return out;
}

FrequencySweep parse_csv(std::string_view text_in) {
    const auto table = text::parse_table(text_in);
    if (table.columns != std::vector<std::string>{"freq_hz", "re", "im"})
        throw Error(Errc::MissingHeader, "expected header 'freq_hz,re,im'");
    std::vector<double> freqs;
    std::vector<Complex> values;
    for (const auto& row : table.rows) {
        freqs.push_back(row[0]);
        values.emplace_back(row[1], row[2]);
    }
    return sweep_from_rows(freqs, values, table.line_numbers);
}

std::string write_csv(const FrequencySweep& sweep) {
    text::Table table;
    table.columns = {"freq_hz", "re", "im"};
    table.rows.reserve(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i)
        table.rows.push_back({sweep.grid().frequency(i), sweep[i].real(), sweep[i].imag()});
    return text::write_table(table);
}

FrequencySweep stitch_bands(std::span<const FrequencySweep> bands) {
    if (bands.empty()) throw Error(Errc::InvalidArgument, "stitch_bands needs at least one sweep");
    if (bands.size() == 1) return bands.front();

    // Canonical order so that ties and floating-point sums do not depend on
    // the caller's ordering.
    std::vector<const FrequencySweep*> order;
    for (const auto& b : bands) order.push_back(&b);
    const auto less = [](const FrequencySweep* a, const FrequencySweep* b) {
        const auto& ga = a->grid();
        const auto& gb = b->grid();
        if (ga.start() != gb.start()) return ga.start() < gb.start();
        if (ga.stop() != gb.stop()) return ga.stop() < gb.stop();
        if (ga.size() != gb.size()) return ga.size() < gb.size();
        return std::lexicographical_compare(a->values().begin(), a->values().end(), b->values().begin(),
                                            b->values().end(), [](const Complex& x, const Complex& y) {
                                                return x.real() != y.real() ? x.real() < y.real()
                                                                            : x.imag() < y.imag();
                                            });
    };
    std::sort(order.begin(), order.end(), less);

    const double step = order.front()->grid().spacing();
    for (const auto* b : order) {
        if (std::abs(b->grid().spacing() - step) > kGridTolerance * step)
            throw Error(Errc::GridMismatch, "band starting at " + freq_ref(b->grid().start()) + " has spacing " +
                                                text::format_double(b->grid().spacing()) + " Hz, expected " +
                                                text::format_double(step) + " Hz");
    }

    const double start = order.front()->grid().start();
    double stop = start;
    for (const auto* b : order) stop = std::max(stop, b->grid().stop());
    const double span_steps = (stop - start) / step;
    const auto n = static_cast<std::size_t>(std::llround(span_steps)) + 1;
    const FrequencyGrid grid(start, stop, n);

    std::vector<Complex> sum(n);
    std::vector<unsigned> count(n, 0);
    for (const auto* b : order) {
        const auto& g = b->grid();
        for (std::size_t i = 0; i < b->size(); ++i) {
            const double pos = (g.frequency(i) - start) / grid.spacing();
            const double j = std::round(pos);
            if (std::abs(pos - j) > 1e-3 || j < 0.0 || j >= static_cast<double>(n))
                throw Error(Errc::GridMismatch, "point " + freq_ref(g.frequency(i)) + " is off the union grid");
            const auto idx = static_cast<std::size_t>(j);
            sum[idx] += (*b)[i];
            ++count[idx];
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (count[j] == 0)
            throw Error(Errc::GapBetweenBands, "no band covers " + freq_ref(grid.frequency(j)));
        sum[j] /= static_cast<double>(count[j]);
    }
    return {grid, std::move(sum)};
}

FrequencySweep load_sweep(const std::filesystem::path& path) {
    const std::string contents = text::read_file(path);
    try {
        if (text::to_lower(path.extension().string()) == ".csv") return parse_csv(contents);
        return parse_touchstone(contents);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.detail());
    }
}

void save_sweep(const std::filesystem::path& path, const FrequencySweep& sweep, TouchstoneFormat format) {
    if (text::to_lower(path.extension().string()) == ".csv") text::write_file(path, write_csv(sweep));
    else text::write_file(path, write_touchstone(sweep, format));
}

}  // namespace rcsgate

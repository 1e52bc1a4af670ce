#include "rcsgate/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rcsgate/error.hpp"

namespace rcsgate::text {

std::string_view trim(std::string_view s) noexcept {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t begin = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > begin) out.push_back(s.substr(begin, i - begin));
    }
    return out;
}

std::vector<std::string_view> split(std::string_view s, char delim) {
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    for (;;) {
        const std::size_t pos = s.find(delim, begin);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(begin));
            return out;
        }
        out.push_back(s.substr(begin, pos - begin));
        begin = pos + 1;
    }
}

std::vector<std::string_view> lines(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    while (begin < s.size()) {
        std::size_t pos = s.find('\n', begin);
        if (pos == std::string_view::npos) pos = s.size();
        std::string_view line = s.substr(begin, pos - begin);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back(line);
        begin = pos + 1;
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::optional<double> parse_double(std::string_view token) noexcept {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (token.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string out(buf.data(), ptr);
    if (std::isfinite(value) && out.find_first_of(".eE") == std::string::npos) out += ".0";
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(Errc::Io, "write failed for '" + path.string() + "'");
}

Table parse_table(std::string_view text) {
    Table table;
    const auto all = lines(text);
    std::size_t i = 0;
    while (i < all.size() && trim(all[i]).empty()) ++i;
    if (i == all.size()) throw Error(Errc::MissingHeader, "no header row");
    for (auto col : split(trim(all[i]), ',')) table.columns.emplace_back(trim(col));
    for (const auto& col : table.columns) {
        if (col.empty()) throw Error(Errc::MissingHeader, "empty column name on line " + std::to_string(i + 1));
        if (parse_double(col)) throw Error(Errc::MissingHeader, "line " + std::to_string(i + 1) + " is data, not a header");
    }
    for (++i; i < all.size(); ++i) {
        const auto line = trim(all[i]);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != table.columns.size())
            throw Error(Errc::BadRow, "line " + std::to_string(i + 1) + ": expected " +
                                          std::to_string(table.columns.size()) + " fields, got " +
                                          std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto f : fields) {
            const auto v = parse_double(f);
            if (!v) throw Error(Errc::BadRow, "line " + std::to_string(i + 1) + ": not a number: '" + std::string(trim(f)) + "'");
            row.push_back(*v);
        }
        table.rows.push_back(std::move(row));
        table.line_numbers.push_back(i + 1);
    }
    return table;
}

std::string write_table(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace rcsgate::text

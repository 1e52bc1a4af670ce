#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcsgate::text {

std::string_view trim(std::string_view s) noexcept;

/// Splits on any run of spaces/tabs.
std::vector<std::string_view> split_ws(std::string_view s);

/// Splits on a single delimiter, keeping empty fields.
std::vector<std::string_view> split(std::string_view s, char delim);

/// Lines without their terminator; a trailing '\r' is dropped.
std::vector<std::string_view> lines(std::string_view s);

std::string to_lower(std::string_view s);

/// Locale-independent decimal parse of the whole token (leading '+' allowed).
std::optional<double> parse_double(std::string_view token) noexcept;

/// Shortest decimal text that round-trips to the same double. Integral values
/// keep a ".0" suffix so columns always read as floating point.
std::string format_double(double value);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Generic comma-separated numeric table: one header row of column names,
/// then rows of decimal numbers. Shared by every CSV the toolkit reads or writes.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// 1-based source line of each row, for error messages.
    std::vector<std::size_t> line_numbers;
};

Table parse_table(std::string_view text);
std::string write_table(const Table& table);

}  // namespace rcsgate::text

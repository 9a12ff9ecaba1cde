#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vadbench::csv {

std::vector<std::string_view> split(std::string_view line, char sep);

std::string_view trim(std::string_view s);

// Whole-field decimal parse; nullopt on junk or trailing characters.
std::optional<double> parse_double(std::string_view field);
std::optional<std::int64_t> parse_int(std::string_view field);

// Shortest round-trip decimal; "inf" / "-inf" / "nan" for non-finite values.
std::string format_double(double v);

// Lines without terminators; a trailing '\r' is stripped. Throws kIoFailure.
std::vector<std::string> read_lines(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view body);

}  // namespace vadbench::csv

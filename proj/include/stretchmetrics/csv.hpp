#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stretchmetrics::csv {

/// Shortest decimal text that round-trips the exact double value.
std::string format_double(double value);

/// Strict finite-decimal parse: the whole token must be consumed and the
/// value must be finite. Returns false otherwise.
bool parse_double(std::string_view token, double& out);

/// Splits one line on commas. No quoting; instrument logs never quote.
std::vector<std::string_view> split_fields(std::string_view line);

/// Reads a whole text file, failing with FileMissing if it cannot be
/// opened. Accepts LF and CRLF; returned lines carry no terminators.
/// Empty lines are permitted only at end of file.
std::vector<std::string> read_lines(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace stretchmetrics::csv

#include "stretchmetrics/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "stretchmetrics/types.hpp"

namespace stretchmetrics::csv {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

bool parse_double(std::string_view token, double& out) {
    if (token.empty()) return false;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) return false;
    return std::isfinite(out);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail("FileMissing", "cannot open " + path.string());
    }
    std::vector<std::string> lines;
    std::string line;
    std::size_t blank_run = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            ++blank_run;
            continue;
        }
        if (blank_run > 0) {
            fail("SchemaMismatch", "blank line inside " + path.string());
        }
        lines.push_back(line);
    }
    return lines;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail("FileMissing", "cannot write " + path.string());
    }
    out << content;
}

}  // namespace stretchmetrics::csv

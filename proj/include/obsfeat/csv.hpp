#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace obsfeat::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // 1-based line number of each data row in the source file, for error messages.
    std::vector<std::size_t> line_numbers;
};

// RFC 4180 subset: comma separator, double-quote quoting with "" escapes,
// LF or CRLF line endings. Blank lines are skipped. Ragged rows are an error.
Table parse(std::string_view text);
Table read_file(const std::filesystem::path& path);

std::string escape(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);
double parse_double(std::string_view text, const std::string& context);

}  // namespace obsfeat::csv

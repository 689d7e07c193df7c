#include "obsfeat/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "obsfeat/error.hpp"

namespace obsfeat::csv {

namespace {

bool is_blank(const std::vector<std::string>& fields) {
    return fields.size() == 1 && fields.front().empty();
}

}  // namespace

Table parse(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    Table table;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    std::size_t line = 1;
    std::size_t record_line = 1;

    auto finish_record = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        if (!is_blank(fields)) {
            if (table.header.empty()) {
                table.header = std::move(fields);
            } else {
                if (fields.size() != table.header.size()) {
                    fail_input("CSV line " + std::to_string(record_line) + ": expected " +
                               std::to_string(table.header.size()) + " fields, found " +
                               std::to_string(fields.size()));
                }
                table.rows.push_back(std::move(fields));
                table.line_numbers.push_back(record_line);
            }
        }
        fields.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                if (!field.empty() || field_was_quoted)
                    fail_input("CSV line " + std::to_string(line) + ": stray quote inside field");
                in_quotes = true;
                field_was_quoted = true;
                break;
            case ',':
                fields.push_back(std::move(field));
                field.clear();
                field_was_quoted = false;
                break;
            case '\r':
                break;
            case '\n':
                finish_record();
                ++line;
                record_line = line;
                break;
            default:
                field.push_back(ch);
        }
    }
    if (in_quotes) fail_input("CSV: unterminated quoted field starting on line " + std::to_string(record_line));
    if (!field.empty() || !fields.empty() || field_was_quoted) finish_record();
    return table;
}

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_io("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back(',');
        line += escape(fields[i]);
    }
    line.push_back('\n');
    return line;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

double parse_double(std::string_view text, const std::string& context) {
    std::string_view trimmed = text;
    while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) trimmed.remove_prefix(1);
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t')) trimmed.remove_suffix(1);
    if (!trimmed.empty() && trimmed.front() == '+') trimmed.remove_prefix(1);
    if (trimmed.empty()) fail_input(context + ": missing value");
    double value = 0.0;
    auto [end, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
    if (ec != std::errc() || end != trimmed.data() + trimmed.size() || !std::isfinite(value))
        fail_input(context + ": non-numeric value '" + std::string(text) + "'");
    return value;
}

}  // namespace obsfeat::csv

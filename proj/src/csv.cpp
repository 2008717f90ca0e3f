#include "emtime/csv.hpp"

#include <charconv>
#include <cmath>

namespace emtime {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0; // drop the sign of negative zero
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 12);
    return std::string(buffer, ec == std::errc{} ? end : buffer);
}

namespace {

std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

struct CellWriter {
    std::string& out;
    void operator()(std::monostate) const {}
    void operator()(double v) const { out += format_number(v); }
    void operator()(const std::string& s) const { out += escape(s); }
};

} // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += escape(table.header[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::visit(CellWriter{out}, row[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace emtime

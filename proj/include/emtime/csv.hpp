#pragma once

#include <string>
#include <variant>
#include <vector>

namespace emtime {

/// Empty cells are written as nothing between the delimiters.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// %.12g-style decimal (12 significant digits), independent of the global locale.
std::string format_number(double value);

/// Comma-separated, LF line endings, header first.
std::string to_csv(const Table& table);

} // namespace emtime

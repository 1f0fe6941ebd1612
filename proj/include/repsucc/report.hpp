#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace repsucc {

enum class OutputFormat { table, json, csv };

OutputFormat parse_output_format(std::string_view name);

/// A cell of a report: number, integer, flag, text or missing (null).
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

/// Column-oriented result set shared by every CLI command. A report marked
/// `single` renders as one JSON object (or key/value lines in table mode)
/// instead of an array.
struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    bool single = false;

    void add_row(std::vector<Cell> row);
};

/// Shortest decimal that round-trips to the same double.
std::string format_full(double value);
/// Four significant digits, as used by the table format.
std::string format_4sig(double value);

void render(const Report& report, OutputFormat format, std::ostream& out);

}  // namespace repsucc

#include "repsucc/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "repsucc/errors.hpp"

namespace repsucc {

namespace {

std::string cell_text(const Cell& cell, bool full) {
    return std::visit(
        [full](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return full ? "" : "-";
            } else if constexpr (std::is_same_v<T, double>) {
                return full ? format_full(v) : format_4sig(v);
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return v;
            }
        },
        cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) {
                    return nullptr;
                }
                return v;
            } else {
                return v;
            }
        },
        cell);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + '"';
}

void render_table(const Report& report, std::ostream& out) {
    if (report.single && report.rows.size() == 1) {
        std::size_t width = 0;
        for (const auto& c : report.columns) {
            width = std::max(width, c.size());
        }
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            out << report.columns[i] << std::string(width - report.columns[i].size() + 2, ' ')
                << cell_text(report.rows[0][i], false) << '\n';
        }
        return;
    }
    std::vector<std::vector<std::string>> text;
    std::vector<std::size_t> widths;
    for (const auto& c : report.columns) {
        widths.push_back(c.size());
    }
    for (const auto& row : report.rows) {
        auto& line = text.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(cell_text(row[i], false));
            widths[i] = std::max(widths[i], line.back().size());
        }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out << "  ";
            }
            out << std::string(widths[i] - cells[i].size(), ' ') << cells[i];
        }
        out << '\n';
    };
    emit(report.columns);
    for (const auto& line : text) {
        emit(line);
    }
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
    if (name == "table") {
        return OutputFormat::table;
    }
    if (name == "json") {
        return OutputFormat::json;
    }
    if (name == "csv") {
        return OutputFormat::csv;
    }
    throw DomainError("unknown output format '" + std::string(name) + "'");
}

void Report::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("report row width does not match its columns");
    }
    rows.push_back(std::move(row));
}

std::string format_full(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string format_4sig(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", value);
    return buf;
}

void render(const Report& report, OutputFormat format, std::ostream& out) {
    switch (format) {
        case OutputFormat::table:
            render_table(report, out);
            break;
        case OutputFormat::csv:
            for (std::size_t i = 0; i < report.columns.size(); ++i) {
                out << (i ? "," : "") << report.columns[i];
            }
            out << '\n';
            for (const auto& row : report.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    out << (i ? "," : "") << csv_escape(cell_text(row[i], true));
                }
                out << '\n';
            }
            break;
        case OutputFormat::json: {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const auto& row : report.rows) {
                nlohmann::ordered_json obj = nlohmann::ordered_json::object();
                for (std::size_t i = 0; i < row.size(); ++i) {
                    obj[report.columns[i]] = cell_json(row[i]);
                }
                rows.push_back(std::move(obj));
            }
            if (report.single && rows.size() == 1) {
                out << rows[0].dump(2) << '\n';
            } else {
                out << rows.dump(2) << '\n';
            }
            break;
        }
    }
}

}  // namespace repsucc

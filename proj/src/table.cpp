#include "kerrpa/table.hpp"

#include <cmath>
#include <limits>
#include <cstdio>
#include <json.hpp>
#include <stdexcept>

#include "kerrpa/errors.hpp"

namespace kerrpa {
namespace {

std::string cell_text(const Cell& cell, bool json) {
    return std::visit(
        [json](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                const std::string s = format_double(v);
                return json && !std::isfinite(v) ? "\"" + s + "\"" : s;
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return json ? nlohmann::json(v).dump() : v;
            }
        },
        cell);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::out_of_range("no column " + std::string(name));
}

double Table::number(std::size_t row, std::string_view name) const {
    const Cell& c = rows.at(row).at(column(name));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? 1.0 : 0.0;
    throw std::invalid_argument("column " + std::string(name) + " is not numeric");
}

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw ConfigError("/format", "must be \"csv\" or \"json\"");
}

std::string_view format_name(Format format) noexcept { return format == Format::csv ? "csv" : "json"; }

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(cell_text(row[i], false));
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    std::string out = "{\n  \"columns\": [";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ", ";
        out += nlohmann::json(table.columns[i]).dump();
    }
    out += "],\n  \"rows\": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out += r ? ",\n    [" : "\n    [";
        const auto& row = table.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ", ";
            out += cell_text(row[i], true);
        }
        out += ']';
    }
    out += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

std::string render(const Table& table, Format format) {
    return format == Format::csv ? to_csv(table) : to_json(table);
}

Table parse_json_table(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", std::string("table is not valid JSON: ") + e.what(), e.byte);
    }
    Table t;
    for (const auto& c : doc.at("columns")) t.columns.push_back(c.get<std::string>());
    for (const auto& row : doc.at("rows")) {
        std::vector<Cell> cells;
        for (const auto& v : row) {
            if (v.is_boolean()) {
                cells.emplace_back(v.get<bool>());
            } else if (v.is_number_integer()) {
                cells.emplace_back(v.get<long long>());
            } else if (v.is_number()) {
                cells.emplace_back(v.get<double>());
            } else {
                const auto s = v.get<std::string>();
                if (s == "nan") cells.emplace_back(std::nan(""));
                else if (s == "inf") cells.emplace_back(std::numeric_limits<double>::infinity());
                else if (s == "-inf") cells.emplace_back(-std::numeric_limits<double>::infinity());
                else cells.emplace_back(s);
            }
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

}  // namespace kerrpa

#pragma once

// Result tables and their CSV / JSON renderings. Floating-point cells are
// always printed with 17 significant digits in scientific notation, and
// non-finite values as nan / inf / -inf, so identical inputs give identical
// bytes.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kerrpa {

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Index of `name`; throws std::out_of_range when absent.
    std::size_t column(std::string_view name) const;
    double number(std::size_t row, std::string_view name) const;

    bool operator==(const Table&) const = default;
};

enum class Format { csv, json };

Format parse_format(std::string_view name);
std::string_view format_name(Format format) noexcept;

std::string format_double(double value);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string render(const Table& table, Format format);

/// Inverse of to_json: "nan" / "inf" / "-inf" strings become doubles again.
Table parse_json_table(std::string_view text);

}  // namespace kerrpa

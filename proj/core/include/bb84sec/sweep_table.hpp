#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace bb84sec {

// One CSV cell: a finite double or a short label ("all_secured", "bob",
// "true", "" for not-applicable).  Text must not contain separators, quotes
// or line breaks — the CSV dialect here is deliberately quote-free.
class SweepCell {
public:
    static SweepCell number(double value);       // throws on non-finite
    static SweepCell text(std::string value);    // throws on ',' '"' '\n' '\r'
    static SweepCell blank() { return text(""); }

    bool is_number() const { return std::holds_alternative<double>(value_); }
    double number_value() const;                 // throws std::bad_variant_access
    const std::string& text_value() const;

    bool operator==(const SweepCell&) const = default;

private:
    SweepCell() = default;
    std::variant<double, std::string> value_;
};

// Rectangular result table for parameter sweeps.  Serializes to RFC-4180-ish
// CSV: header row, comma separator, LF line endings, numbers printed with 12
// significant digits.
class SweepTable {
public:
    explicit SweepTable(std::vector<std::string> columns);

    void add_row(std::vector<SweepCell> row);    // throws on arity mismatch

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<SweepCell>& row(std::size_t i) const { return rows_.at(i); }
    const SweepCell& at(std::size_t row, std::size_t col) const;
    // Column index by header name; throws std::out_of_range if absent.
    std::size_t column_index(const std::string& name) const;

    void write_csv(std::ostream& out) const;
    std::string to_csv() const;

    // Inverse of write_csv: fields that parse completely as a double become
    // numeric cells, everything else stays text.
    static SweepTable read_csv(std::istream& in);
    static SweepTable from_csv(const std::string& csv);

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<SweepCell>> rows_;
};

// Printed form of one numeric cell ("%.12g"), shared with the CLI.
std::string format_numeric(double value);

}  // namespace bb84sec

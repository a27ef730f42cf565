#include "bb84sec/sweep_table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace bb84sec {

std::string format_numeric(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

SweepCell SweepCell::number(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("SweepCell: numeric cells must be finite");
    }
    SweepCell cell;
    cell.value_ = value;
    return cell;
}

SweepCell SweepCell::text(std::string value) {
    if (value.find_first_of(",\"\n\r") != std::string::npos) {
        throw std::invalid_argument("SweepCell: text cells must not need quoting");
    }
    SweepCell cell;
    cell.value_ = std::move(value);
    return cell;
}

double SweepCell::number_value() const {
    return std::get<double>(value_);
}

const std::string& SweepCell::text_value() const {
    return std::get<std::string>(value_);
}

SweepTable::SweepTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
    if (columns_.empty()) {
        throw std::invalid_argument("SweepTable: need at least one column");
    }
}

void SweepTable::add_row(std::vector<SweepCell> row) {
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("SweepTable: row arity does not match header");
    }
    rows_.push_back(std::move(row));
}

const SweepCell& SweepTable::at(std::size_t row, std::size_t col) const {
    return rows_.at(row).at(col);
}

std::size_t SweepTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i] == name) return i;
    }
    throw std::out_of_range("SweepTable: no column named " + name);
}

void SweepTable::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out << ',';
        out << columns_[i];
    }
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (row[i].is_number()) {
                out << format_numeric(row[i].number_value());
            } else {
                out << row[i].text_value();
            }
        }
        out << '\n';
    }
}

std::string SweepTable::to_csv() const {
    std::ostringstream out;
    write_csv(out);
    return out.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

SweepCell parse_cell(const std::string& field) {
    if (!field.empty()) {
        const char* begin = field.c_str();
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin + field.size() && std::isfinite(value)) {
            return SweepCell::number(value);
        }
    }
    return SweepCell::text(field);
}

}  // namespace

SweepTable SweepTable::read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("SweepTable::read_csv: empty input");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    SweepTable table(split_fields(line));
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;  // tolerate a trailing blank line
        std::vector<SweepCell> row;
        for (const auto& field : split_fields(line)) {
            row.push_back(parse_cell(field));
        }
        table.add_row(std::move(row));
    }
    return table;
}

SweepTable SweepTable::from_csv(const std::string& csv) {
    std::istringstream in(csv);
    return read_csv(in);
}

}  // namespace bb84sec

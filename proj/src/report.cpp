#include "ptthermo/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ptthermo {
namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell) {
    if (cell == "nan") return NAN;
    if (cell == "inf") return INFINITY;
    if (cell == "-inf") return -INFINITY;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != cell.size()) throw std::runtime_error("csv: bad number '" + cell + "'");
    return v;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::out_of_range("table has no column '" + name + "'");
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::runtime_error("csv: row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
}

std::string to_csv(const Table& table) {
    std::ostringstream ss;
    write_csv(ss, table);
    return ss.str();
}

Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
    t.header = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != t.header.size()) throw std::runtime_error("csv: ragged row");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_cell(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace ptthermo

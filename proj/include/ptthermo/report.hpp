#pragma once

// Tabular output: CSV with one header row, 12 significant digits and '\n'
// line endings, plus the matching reader used for round-trip checks.

#include <iosfwd>
#include <string>
#include <vector>

namespace ptthermo {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a header column; throws std::out_of_range if absent.
    std::size_t column(const std::string& name) const;
};

/// printf "%.12g"; non-finite values print as nan / inf / -inf.
std::string format_number(double value);

void write_csv(std::ostream& out, const Table& table);
std::string to_csv(const Table& table);

/// Parses text produced by write_csv. Throws std::runtime_error on ragged
/// rows or unparsable cells.
Table read_csv(std::istream& in);

}  // namespace ptthermo

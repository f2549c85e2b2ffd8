#ifndef SIVIB_CSVIO_HPP
#define SIVIB_CSVIO_HPP

#include <optional>
#include <string>
#include <vector>

namespace sivib::csvio {

struct Table {
    std::vector<std::string> header;              // empty for a headerless file
    std::vector<std::vector<std::string>> rows;   // trimmed cells
    std::string path;
};

// Reads a comma-separated file. Blank lines and lines starting with '#' are
// skipped. An empty (or whitespace-only) file yields an empty table.
Table read_csv(const std::string& path, bool expect_header);

// Parses a cell as double; on failure names the file, 1-based data row and
// the column header.
double parse_double(const Table& t, std::size_t row, std::size_t col);

// Empty cell -> nullopt, otherwise parsed as above.
std::optional<double> parse_optional(const Table& t, std::size_t row, std::size_t col);

// Index of a header column, or nullopt.
std::optional<std::size_t> column(const Table& t, const std::string& name);

// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

} // namespace sivib::csvio

#endif

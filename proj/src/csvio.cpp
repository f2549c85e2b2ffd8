#include "sivib/csvio.hpp"
#include "sivib/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sivib::csvio {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

} // namespace

Table read_csv(const std::string& path, bool expect_header) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    Table t;
    t.path = path;
    std::string line;
    bool header_done = !expect_header;
    while (std::getline(in, line)) {
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (!header_done) {
            t.header = split(s);
            header_done = true;
            continue;
        }
        t.rows.push_back(split(s));
    }
    return t;
}

double parse_double(const Table& t, std::size_t row, std::size_t col) {
    auto fail = [&](const std::string& what) -> double {
        std::string colname = col < t.header.size() ? t.header[col]
                                                    : "column " + std::to_string(col + 1);
        throw ValidationError(t.path + ": row " + std::to_string(row + 1) + ", " + colname +
                              ": " + what);
    };
    if (row >= t.rows.size() || col >= t.rows[row].size()) return fail("missing value");
    const std::string& cell = t.rows[row][col];
    if (cell.empty()) return fail("missing value");
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') return fail("not a number: '" + cell + "'");
    return v;
}

std::optional<double> parse_optional(const Table& t, std::size_t row, std::size_t col) {
    if (row >= t.rows.size() || col >= t.rows[row].size() || t.rows[row][col].empty())
        return std::nullopt;
    return parse_double(t, row, col);
}

std::optional<std::size_t> column(const Table& t, const std::string& name) {
    auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - t.header.begin());
}

std::string format_double(double x) {
    char buf[40];
    if (x == static_cast<long long>(x) && std::abs(x) < 1e15) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(x));
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace sivib::csvio

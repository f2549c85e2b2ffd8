#include "sivib/params.hpp"
#include "sivib/constants.hpp"
#include "sivib/csvio.hpp"
#include "sivib/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sivib {

PjtParams PjtParams::make(double pressure_gpa, double f_g, double f_u, double hbar_omega,
                          double lambda, double xi, double so_lambda_u_ghz,
                          double so_lambda_g_ghz, double quad_g) {
    if (!(hbar_omega > 0.0))
        throw ValidationError("hbar_omega must be positive, got " + std::to_string(hbar_omega));
    PjtParams p;
    p.pressure_gpa = pressure_gpa;
    p.f_g_mev = std::abs(f_g);
    p.f_u_mev = std::abs(f_u);
    p.hbar_omega_mev = hbar_omega;
    p.lambda_mev = lambda;
    p.xi_mev = xi;
    p.so_lambda_u_ghz = so_lambda_u_ghz;
    p.so_lambda_g_ghz = so_lambda_g_ghz;
    p.quad_g_mev = quad_g;
    return p;
}

StrainSeries StrainSeries::make(AxisKind kind, std::vector<double> x, std::vector<double> y,
                                std::string y_unit) {
    if (x.size() != y.size()) throw ValidationError("series x/y length mismatch");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    StrainSeries s;
    s.axis_kind = kind;
    s.y_unit = std::move(y_unit);
    s.x.reserve(x.size());
    s.y.reserve(x.size());
    for (std::size_t i : order) {
        if (!s.x.empty() && !(x[i] > s.x.back()))
            throw ValidationError("series axis values must be strictly monotone (duplicate x = " +
                                  std::to_string(x[i]) + ")");
        s.x.push_back(x[i]);
        s.y.push_back(y[i]);
    }
    return s;
}

namespace {

const char* kColumns[] = {"pressure_gpa", "f_g_mev",       "f_u_mev",
                          "hbar_omega_mev", "lambda_mev",  "xi_mev",
                          "lambda_u_ghz", "lambda_g_ghz",  "quad_g_mev"};

PjtParams from_fields(const double* v, const bool* present, const std::string& where) {
    if (!(v[3] > 0.0))
        throw ValidationError(where + ": hbar_omega_mev must be positive, got " +
                              std::to_string(v[3]));
    return PjtParams::make(v[0], v[1], v[2], v[3], v[4], v[5], present[6] ? v[6] : 0.0,
                           present[7] ? v[7] : 0.0, present[8] ? v[8] : 0.0);
}

std::vector<PjtParams> load_csv(const std::string& path) {
    auto t = csvio::read_csv(path, /*expect_header=*/true);
    std::vector<PjtParams> out;
    if (t.header.empty() && t.rows.empty()) return out; // empty file
    for (std::size_t c = 0; c < 6; ++c)
        if (!csvio::column(t, kColumns[c]))
            throw ValidationError(path + ": missing required column '" + std::string(kColumns[c]) +
                                  "'");
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        double v[9] = {0};
        bool present[9] = {false};
        for (std::size_t c = 0; c < 9; ++c) {
            auto col = csvio::column(t, kColumns[c]);
            if (!col) continue;
            if (c < 6) {
                v[c] = csvio::parse_double(t, r, *col);
                present[c] = true;
            } else if (auto opt = csvio::parse_optional(t, r, *col)) {
                v[c] = *opt;
                present[c] = true;
            }
        }
        out.push_back(from_fields(v, present, path + ": row " + std::to_string(r + 1)));
    }
    return out;
}

// Minimal TOML subset: [[point]] tables with 'key = number' pairs, '#' comments.
std::vector<PjtParams> load_toml(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::vector<PjtParams> out;
    double v[9] = {0};
    bool present[9] = {false};
    bool open = false;
    int lineno = 0, tableno = 0;
    auto flush = [&]() {
        if (open) out.push_back(from_fields(v, present, path + ": point " + std::to_string(tableno)));
    };
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok == "[[point]]") {
            flush();
            std::fill(std::begin(v), std::end(v), 0.0);
            std::fill(std::begin(present), std::end(present), false);
            open = true;
            ++tableno;
            continue;
        }
        std::string eq, value;
        if (!(ss >> eq >> value) || eq != "=")
            throw ValidationError(path + ": line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
        if (!open)
            throw ValidationError(path + ": line " + std::to_string(lineno) +
                                  ": key outside any [[point]] table");
        char* end = nullptr;
        double x = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0')
            throw ValidationError(path + ": line " + std::to_string(lineno) + ", " + tok +
                                  ": not a number: '" + value + "'");
        bool known = false;
        for (std::size_t c = 0; c < 9; ++c)
            if (tok == kColumns[c]) {
                v[c] = x;
                present[c] = true;
                known = true;
            }
        if (!known)
            throw ValidationError(path + ": line " + std::to_string(lineno) + ": unknown key '" +
                                  tok + "'");
    }
    flush();
    return out;
}

} // namespace

std::vector<PjtParams> load_param_table(const std::string& path, ParamFormat format) {
    return format == ParamFormat::Csv ? load_csv(path) : load_toml(path);
}

void save_param_table(const std::string& path, const std::vector<PjtParams>& pts,
                      ParamFormat format) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    auto f = csvio::format_double;
    if (format == ParamFormat::Csv) {
        out << "pressure_gpa,f_g_mev,f_u_mev,hbar_omega_mev,lambda_mev,xi_mev,"
               "lambda_u_ghz,lambda_g_ghz,quad_g_mev\n";
        for (const auto& p : pts)
            out << f(p.pressure_gpa) << ',' << f(p.f_g_mev) << ',' << f(p.f_u_mev) << ','
                << f(p.hbar_omega_mev) << ',' << f(p.lambda_mev) << ',' << f(p.xi_mev) << ','
                << f(p.so_lambda_u_ghz) << ',' << f(p.so_lambda_g_ghz) << ','
                << f(p.quad_g_mev) << '\n';
    } else {
        for (const auto& p : pts) {
            out << "[[point]]\n";
            out << "pressure_gpa = " << f(p.pressure_gpa) << '\n';
            out << "f_g_mev = " << f(p.f_g_mev) << '\n';
            out << "f_u_mev = " << f(p.f_u_mev) << '\n';
            out << "hbar_omega_mev = " << f(p.hbar_omega_mev) << '\n';
            out << "lambda_mev = " << f(p.lambda_mev) << '\n';
            out << "xi_mev = " << f(p.xi_mev) << '\n';
            out << "lambda_u_ghz = " << f(p.so_lambda_u_ghz) << '\n';
            out << "lambda_g_ghz = " << f(p.so_lambda_g_ghz) << '\n';
            out << "quad_g_mev = " << f(p.quad_g_mev) << "\n\n";
        }
    }
}

StrainSeries load_series(const std::string& path, const std::string& x_col,
                         const std::string& y_col, AxisKind kind) {
    auto t = csvio::read_csv(path, true);
    auto cx = csvio::column(t, x_col);
    auto cy = csvio::column(t, y_col);
    if (!cx || !cy)
        throw ValidationError(path + ": expected columns '" + x_col + "' and '" + y_col + "'");
    std::vector<double> x, y;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        x.push_back(csvio::parse_double(t, r, *cx));
        y.push_back(csvio::parse_double(t, r, *cy));
    }
    return StrainSeries::make(kind, std::move(x), std::move(y), y_col);
}

double oscillator_length(double hbar_omega_mev) {
    if (!(hbar_omega_mev > 0.0))
        throw ValidationError("oscillator_length requires a positive energy, got " +
                              std::to_string(hbar_omega_mev));
    return std::sqrt(constants::hbar2_over_amu_A2_meV / hbar_omega_mev);
}

double energy_to_frequency(double e_mev) { return e_mev * constants::meV_to_GHz; }

double frequency_to_energy(double f_ghz) { return f_ghz / constants::meV_to_GHz; }

} // namespace sivib

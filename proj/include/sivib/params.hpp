#ifndef SIVIB_PARAMS_HPP
#define SIVIB_PARAMS_HPP

#include <string>
#include <vector>

namespace sivib {

// One strain point of the spin-vibronic model. Energies in meV, spin-orbit
// parameters in GHz. Couplings are stored in nonnegative canonical form
// (the spectrum is invariant under a joint sign flip of f_g, f_u).
struct PjtParams {
    double pressure_gpa = 0.0;
    double f_g_mev = 0.0;        // vibronic coupling of the gerade doublet
    double f_u_mev = 0.0;        // vibronic coupling of the ungerade doublet
    double hbar_omega_mev = 0.0; // phonon quantum of the E mode
    double lambda_mev = 0.0;     // electronic correlation splitting (A manifold)
    double xi_mev = 0.0;         // electronic lowering of the E manifold
    double so_lambda_u_ghz = 0.0;
    double so_lambda_g_ghz = 0.0;
    double quad_g_mev = 0.0;     // quadratic (warping) coupling, 0 unless supplied

    // Canonicalizes coupling signs and validates hbar_omega > 0.
    static PjtParams make(double pressure_gpa, double f_g, double f_u, double hbar_omega,
                          double lambda, double xi, double so_lambda_u_ghz = 0.0,
                          double so_lambda_g_ghz = 0.0, double quad_g = 0.0);
};

enum class AxisKind { PressureGpa, StrainFraction };

// An (axis, observable) series; x strictly increasing after construction.
struct StrainSeries {
    AxisKind axis_kind = AxisKind::PressureGpa;
    std::vector<double> x;
    std::vector<double> y;
    std::string y_unit;

    static StrainSeries make(AxisKind kind, std::vector<double> x, std::vector<double> y,
                             std::string y_unit);
    std::size_t size() const { return x.size(); }
};

enum class ParamFormat { Csv, Toml };

// CSV schema: pressure_gpa,f_g_mev,f_u_mev,hbar_omega_mev,lambda_mev,xi_mev
//             [,lambda_u_ghz,lambda_g_ghz,quad_g_mev]
// TOML mirror: one [[point]] table per row with the same keys.
std::vector<PjtParams> load_param_table(const std::string& path, ParamFormat format);
void save_param_table(const std::string& path, const std::vector<PjtParams>& pts,
                      ParamFormat format);

// x,y series from a two-column CSV with the given header names.
StrainSeries load_series(const std::string& path, const std::string& x_col,
                         const std::string& y_col, AxisKind kind);

// Length scale l = sqrt((hbar^2/amu/A^2)/E) of a 1 amu oscillator with quantum
// E, in Angstrom*sqrt(amu). Bridges dimensionless mode coordinates to
// mass-weighted displacements.
double oscillator_length(double hbar_omega_mev);

// E/h in GHz; linear and sign-preserving.
double energy_to_frequency(double e_mev);
double frequency_to_energy(double f_ghz);

} // namespace sivib

#endif

#ifndef SIVIB_SCHRODINGER_HPP
#define SIVIB_SCHRODINGER_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace sivib {

// Sampled 1D potential in mass-weighted coordinates (Angstrom*sqrt(amu), meV)
// on a uniform grid with hard-wall boundaries just outside the ends.
struct PotentialCurve {
    std::vector<double> q;
    std::vector<double> v_mev;

    static PotentialCurve make(std::vector<double> q, std::vector<double> v_mev);
    // CSV: q_angsqrtamu,v_mev
    static PotentialCurve load_csv(const std::string& path);
    double spacing() const { return (q.back() - q.front()) / (static_cast<double>(q.size()) - 1.0); }
};

struct GridOptions {
    bool richardson = true;  // two-grid eigenvalue refinement
    double mass_amu = 1.0;   // effective mass in mass-weighted coordinates
    bool enforce_boundary_decay = true; // disable for box-like hard-wall problems
};

struct BoundStates {
    std::vector<double> energies_mev;     // refined when richardson is on
    std::vector<double> raw_energies_mev; // base-grid values
    Eigen::MatrixXd wavefunctions;        // base grid, L2-normalized
    double h = 0.0;
    std::vector<std::string> warnings;
};

// Lowest n_states of -hbar^2/(2M) d^2/dQ^2 + V(Q) by second-order central
// differences. Errors when a requested state fails the boundary-decay check
// (|psi(edge)|^2 < 1e-8 of max); warns when the grid resolves fewer than
// 8 points per local de Broglie wavelength at the highest computed energy.
BoundStates solve_bound_states(const PotentialCurve& v, int n_states, const GridOptions& opt = {});

enum class Parity { Even, Odd };

struct TunnelingResult {
    double e0_mev = 0.0;
    double e1_mev = 0.0;
    double delta_e_mev = 0.0;
    double nu_tun_ghz = 0.0;
    Parity parity0 = Parity::Even;
    Parity parity1 = Parity::Odd;
    double barrier_mev = 0.0; // V(center) - V(min)
    bool above_barrier = false;
    double h = 0.0;
    int grid_points = 0;
};

// Splitting of the lowest doublet of a symmetric double well (symmetry
// checked to 1e-9 meV; asymmetric input is an error and should go through
// solve_bound_states directly). States above the barrier top are flagged.
TunnelingResult tunneling_splitting(const PotentialCurve& v, const GridOptions& opt = {});

// Semiclassical estimate (hbar w_well / pi) exp(-S) with the under-barrier
// action S evaluated at E0 between linearly interpolated turning points.
double wkb_splitting(const PotentialCurve& v, const GridOptions& opt = {});

} // namespace sivib

#endif

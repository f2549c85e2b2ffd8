#ifndef SIVIB_APES_HPP
#define SIVIB_APES_HPP

#include "sivib/lsq.hpp"
#include "sivib/params.hpp"

#include <array>
#include <string>
#include <vector>

namespace sivib {

// Sampled adiabatic-surface cut: per grid point, 1..4 branch energies in
// ascending order. branch_ids optionally maps data columns to model branches
// (default: column i is model branch i).
struct ApesScan {
    std::vector<double> q;                     // Angstrom*sqrt(amu), strictly increasing
    std::vector<std::vector<double>> branches; // energies in meV
    std::vector<int> branch_ids;

    static ApesScan make(std::vector<double> q, std::vector<std::vector<double>> branches,
                         std::vector<int> branch_ids = {});
    // CSV: q_angsqrtamu,e1_mev[,e2_mev,e3_mev,e4_mev]; blank cells allowed.
    static ApesScan load_csv(const std::string& path);
    std::size_t residual_count() const;
};

// Adiabatic branch energies along the X cut at mass-weighted coordinate q:
// eigenvalues of (hw/2) x^2 + x (f_u sigma_u_z + f_g sigma_g_z)
//                + quad x^2 (sigma_u_z + sigma_g_z) + W, x = q / l(hw),
// ascending. The two middle branches are degenerate at q = 0.
std::array<double, 4> apes_cut_point(const PjtParams& p, double q);
std::vector<std::array<double, 4>> apes_cut(const PjtParams& p, const std::vector<double>& q);

// Parameter order used by the fit mask: f_g, f_u, hbar_omega, lambda, xi, quad_g.
struct PjtFitSettings {
    std::array<bool, 6> free = {true, true, true, true, true, false};
    FitOptions lm;
};

struct PjtFitResult {
    PjtParams params;
    FitResult fit;
};

PjtFitResult fit_pjt(const ApesScan& scan, const PjtParams& init,
                     const PjtFitSettings& settings = {});

// Symmetric quartic double well V(q) = B ((q/q0)^2 - 1)^2 + offset.
struct QuarticWell {
    double barrier_mev = 0.0;
    double q0 = 0.0;
    double offset_mev = 0.0;
    double value(double q) const;
};

struct QuarticFitResult {
    QuarticWell well;
    FitResult fit;
};

// Fits a single-branch scan; mirror_half mirrors the data about q = 0 first
// (for scans covering only one side of a symmetric well).
QuarticFitResult fit_quartic_well(const ApesScan& scan, bool mirror_half = false,
                                  const FitOptions& opt = {});

} // namespace sivib

#endif

#ifndef SIVIB_OBSERVABLES_HPP
#define SIVIB_OBSERVABLES_HPP

#include "sivib/params.hpp"
#include "sivib/spectrum.hpp"

#include <optional>

namespace sivib {

struct JtEnergies {
    double e_jt1_mev = 0.0; // (f_g + f_u)^2 / 2 hbar omega
    double e_jt2_mev = 0.0; // (f_g - f_u)^2 / 2 hbar omega
};

JtEnergies jt_energies(const PjtParams& p);

// Gap between the lowest E doublet and the lowest nondegenerate A level (the
// dark vibronic state throughout the physical parameter range). Positive when
// the dark singlet is the vibronic ground state.
double vibronic_gap(const LabeledSpectrum& spec);

struct HamFactors {
    double p_u = 0.0;
    double p_g = 0.0;
};

// Quenching of the per-doublet orbital operators sigma_y inside the lowest
// vibronic E doublet: half the spectral spread of the operator restricted to
// the doublet (gauge invariant; both factors are 1 at zero coupling).
HamFactors ham_factors(const LabeledSpectrum& spec, const FockBasis& basis);

// First-order spin-orbit splitting p_u*lambda_u + p_g*lambda_g, in GHz.
double so_splitting(double p_u, double p_g, double lambda_u_ghz, double lambda_g_ghz);

// Splitting of the lowest E-derived doublet from a full diagonalization with
// the spin-orbit term included at the given m_s, in GHz. Cross-checks the
// Ham-reduced product route.
double so_splitting_direct(const PjtParams& p, const FockBasis& basis, int m_s,
                           const SolverOptions& opt);

struct VibronicOptions {
    int n_max = 60;
    int k = 12;
    double tol = 1e-10;
    std::uint64_t seed = 12345;
    double deg_tol_mev = 1e-6;
    bool direct_so = false;
};

struct VibronicReport {
    double pressure_gpa = 0.0;
    double e_jt1_mev = 0.0;
    double e_jt2_mev = 0.0;
    double delta_mev = 0.0;
    double p_u = 0.0;
    double p_g = 0.0;
    double p_mean = 0.0;
    double delta_so_ghz = 0.0;
    std::optional<double> delta_so_direct_ghz;
    std::string ground_symmetry;
    int n_max = 0;
    int iterations = 0;
    double max_residual = 0.0;
    bool converged = false;
    bool coupling_truncated = false;
};

// Full per-strain-point pipeline: assemble, diagonalize, label, extract.
VibronicReport solve_vibronic_point(const PjtParams& p, const VibronicOptions& opt);

} // namespace sivib

#endif

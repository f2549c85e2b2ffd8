#ifndef SIVIB_SPECTRO_HPP
#define SIVIB_SPECTRO_HPP

#include "sivib/params.hpp"

#include <Eigen/Dense>

#include <array>

namespace sivib {

// Adiabatic optical transition energy from relaxed-minimum totals.
double zpl_energy(double e_exc_min_ev, double e_gs_min_ev);

struct RadiativeInput {
    double e_zpl_ev = 0.0;
    double refractive_index = 1.0;
    double dipole_debye = 0.0;
};

struct RadiativeResult {
    double gamma_per_s = 0.0;
    double tau_ns = 0.0;
    bool infinite_lifetime = false; // zero dipole
};

// Dipole emission rate in a dielectric: Gamma = n w^3 mu^2 / (3 pi eps0 hbar c^3).
RadiativeResult radiative_rate(const RadiativeInput& in);

struct HyperfineTensor {
    Eigen::Matrix3d a_mhz = Eigen::Matrix3d::Zero();
    Eigen::Vector3d axis = Eigen::Vector3d(1, 1, 1).normalized(); // defect symmetry axis
};

struct AxialHyperfine {
    double a_par_mhz = 0.0;
    double a_perp_mhz = 0.0;
    double theta_deg = 0.0; // principal-axis tilt from the defect axis, [0, 90]
    bool isotropic = false;
};

// Principal analysis: the eigenvalue farthest from the median is A_par, the
// mean of the remaining two is A_perp.
AxialHyperfine hf_principal(const HyperfineTensor& t);

// Eigenvalues of A_par Sz Iz + A_perp (Sx Ix + Sy Iy) for S=1, I=1/2,
// ascending (MHz). Traceless for any input.
std::array<double, 6> hf_levels(double a_par_mhz, double a_perp_mhz);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares over a strain series; slope in y-units per x-unit.
LinearFit linear_calibration(const StrainSeries& s);

} // namespace sivib

#endif

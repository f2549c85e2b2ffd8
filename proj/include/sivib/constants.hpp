#ifndef SIVIB_CONSTANTS_HPP
#define SIVIB_CONSTANTS_HPP

namespace sivib::constants {

// CODATA 2018. h, e, c are exact SI definitions.
inline constexpr double planck_J_s        = 6.62607015e-34;
inline constexpr double elementary_C      = 1.602176634e-19;
inline constexpr double light_speed_m_s   = 299792458.0;
inline constexpr double eps0_F_m          = 8.8541878128e-12;
inline constexpr double amu_kg            = 1.66053906660e-27;
inline constexpr double pi                = 3.14159265358979323846;

inline constexpr double hbar_J_s  = planck_J_s / (2.0 * pi);
inline constexpr double meV_J     = 1.0e-3 * elementary_C;
inline constexpr double eV_J      = elementary_C;

// 1 Debye in C*m (1e-21/c by definition of the Debye).
inline constexpr double debye_C_m = 1.0e-21 / light_speed_m_s;

// hbar^2 / (amu * Angstrom^2) expressed in meV. This single constant bridges
// energies in meV to mass-weighted coordinates in Angstrom*sqrt(amu); it
// evaluates to 4.18016 meV.
inline constexpr double hbar2_over_amu_A2_meV =
    hbar_J_s * hbar_J_s / (amu_kg * 1.0e-20) / meV_J;

// Kinetic prefactor hbar^2/(2 M) for M = 1 amu, in meV*(A*sqrt(amu))^2.
inline constexpr double kinetic_prefactor_meV = 0.5 * hbar2_over_amu_A2_meV;

// E/h for E = 1 meV, in GHz (241.799 GHz/meV).
inline constexpr double meV_to_GHz = meV_J / planck_J_s / 1.0e9;

} // namespace sivib::constants

#endif

#ifndef SIVIB_CTL_HPP
#define SIVIB_CTL_HPP

#include "sivib/params.hpp"

#include <string>
#include <vector>

namespace sivib {

struct ChargeStateRecord {
    int q = 0;              // charge state
    double e_tot_ev = 0.0;  // supercell total energy
    double e_el_ev = 0.0;   // image-charge correction
    double delta_v_ev = 0.0; // potential alignment
};

// Finite-size correction E_el + q dV.
double fnv_correction(const ChargeStateRecord& rec);

// Thermodynamic transition level between two charge states, referenced to
// the valence band maximum. Symmetric under swapping the records.
double transition_level(const ChargeStateRecord& a, const ChargeStateRecord& b, double e_vbm_ev);

struct ThresholdCurves {
    StrainSeries zpl;                                     // eV vs axis
    std::vector<std::pair<std::string, StrainSeries>> thresholds; // named, eV vs axis
};

struct StabilityWindow {
    double from_x = 0.0;
    double to_x = 0.0;
    bool photostable = false;
};

struct WindowReport {
    std::vector<StabilityWindow> windows; // exact partition of the common range
    std::vector<double> crossings;        // zpl == pointwise-min threshold
};

// Piecewise-linear photostability analysis: photostable where the zpl lies
// below the pointwise minimum of all threshold curves; crossings located by
// exact linear interpolation.
WindowReport photostability_windows(const ThresholdCurves& curves);

} // namespace sivib

#endif

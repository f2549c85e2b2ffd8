#include "sivib/spectro.hpp"
#include "sivib/constants.hpp"
#include "sivib/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sivib {

double zpl_energy(double e_exc_min_ev, double e_gs_min_ev) { return e_exc_min_ev - e_gs_min_ev; }

RadiativeResult radiative_rate(const RadiativeInput& in) {
    namespace c = constants;
    if (!(in.e_zpl_ev > 0.0)) throw ValidationError("transition energy must be positive");
    if (!(in.refractive_index >= 1.0)) throw ValidationError("refractive index must be >= 1");
    if (in.dipole_debye < 0.0) throw ValidationError("dipole magnitude must be nonnegative");

    RadiativeResult out;
    const double omega = in.e_zpl_ev * c::eV_J / c::hbar_J_s;
    const double mu = in.dipole_debye * c::debye_C_m;
    out.gamma_per_s = in.refractive_index * omega * omega * omega * mu * mu /
                      (3.0 * c::pi * c::eps0_F_m * c::hbar_J_s * c::light_speed_m_s *
                       c::light_speed_m_s * c::light_speed_m_s);
    if (out.gamma_per_s > 0.0) {
        out.tau_ns = 1.0e9 / out.gamma_per_s;
    } else {
        out.infinite_lifetime = true;
        out.tau_ns = std::numeric_limits<double>::infinity();
    }
    return out;
}

AxialHyperfine hf_principal(const HyperfineTensor& t) {
    if ((t.a_mhz - t.a_mhz.transpose()).cwiseAbs().maxCoeff() >= 1e-9)
        throw ValidationError("hyperfine tensor must be symmetric to 1e-9 MHz");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (t.a_mhz + t.a_mhz.transpose()));
    Eigen::Vector3d e = es.eigenvalues(); // ascending
    AxialHyperfine out;
    if (e(2) - e(0) < 1e-9) {
        out.isotropic = true;
        out.a_par_mhz = out.a_perp_mhz = e.mean();
        out.theta_deg = 0.0;
        return out;
    }
    // principal value farthest from the median
    int pick = (e(2) - e(1) >= e(1) - e(0)) ? 2 : 0;
    out.a_par_mhz = e(pick);
    out.a_perp_mhz = 0.5 * (e((pick + 1) % 3) + e((pick + 2) % 3));
    Eigen::Vector3d dir = es.eigenvectors().col(pick);
    double c = std::abs(dir.dot(t.axis.normalized()));
    c = std::clamp(c, 0.0, 1.0);
    out.theta_deg = std::acos(c) * 180.0 / constants::pi;
    return out;
}

std::array<double, 6> hf_levels(double a_par_mhz, double a_perp_mhz) {
    using C = std::complex<double>;
    const double s2 = 1.0 / std::sqrt(2.0);
    Eigen::Matrix3cd sz, sx, sy;
    sz.setZero();
    sz(0, 0) = 1.0;
    sz(2, 2) = -1.0;
    sx.setZero();
    sx(0, 1) = sx(1, 0) = sx(1, 2) = sx(2, 1) = s2;
    sy.setZero();
    sy(0, 1) = sy(1, 2) = C(0, -s2);
    sy(1, 0) = sy(2, 1) = C(0, s2);
    Eigen::Matrix2cd iz, ix, iy;
    iz << 0.5, 0, 0, -0.5;
    ix << 0, 0.5, 0.5, 0;
    iy << C(0, 0), C(0, -0.5), C(0, 0.5), C(0, 0);

    auto kron = [](const Eigen::Matrix3cd& a, const Eigen::Matrix2cd& b) {
        Eigen::Matrix<C, 6, 6> m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        return m;
    };
    Eigen::Matrix<C, 6, 6> h =
        a_par_mhz * kron(sz, iz) + a_perp_mhz * (kron(sx, ix) + kron(sy, iy));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<C, 6, 6>> es(h);
    std::array<double, 6> out;
    for (int i = 0; i < 6; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

LinearFit linear_calibration(const StrainSeries& s) {
    const std::size_t n = s.size();
    if (n < 2) throw ValidationError("calibration needs at least 2 points");
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += s.x[i];
        ym += s.y[i];
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = s.x[i] - xm, dy = s.y[i] - ym;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw ValidationError("degenerate design: all x values identical");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = ym - f.slope * xm;
    double ssr = syy - f.slope * sxy;
    f.r_squared = syy > 1e-300 ? 1.0 - ssr / syy : 1.0;
    return f;
}

} // namespace sivib

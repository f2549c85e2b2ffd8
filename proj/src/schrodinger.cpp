#include "sivib/schrodinger.hpp"
#include "sivib/constants.hpp"
#include "sivib/csvio.hpp"
#include "sivib/errors.hpp"
#include "sivib/params.hpp"
#include "sivib/tridiag.hpp"

#include <algorithm>
#include <cmath>

namespace sivib {

PotentialCurve PotentialCurve::make(std::vector<double> q, std::vector<double> v_mev) {
    if (q.size() != v_mev.size()) throw ValidationError("potential q/v length mismatch");
    if (q.size() < 64) throw ValidationError("potential grid needs at least 64 points");
    const double h = (q.back() - q.front()) / (static_cast<double>(q.size()) - 1.0);
    if (!(h > 0.0)) throw ValidationError("potential grid must be increasing");
    for (std::size_t i = 1; i < q.size(); ++i)
        if (std::abs((q[i] - q[i - 1]) - h) > 1e-12 * std::abs(h))
            throw ValidationError("potential grid must be uniform to 1e-12 relative");
    for (double v : v_mev)
        if (!std::isfinite(v)) throw ValidationError("potential values must be finite");
    PotentialCurve c;
    c.q = std::move(q);
    c.v_mev = std::move(v_mev);
    return c;
}

PotentialCurve PotentialCurve::load_csv(const std::string& path) {
    auto t = csvio::read_csv(path, true);
    auto cq = csvio::column(t, "q_angsqrtamu");
    auto cv = csvio::column(t, "v_mev");
    if (!cq || !cv)
        throw ValidationError(path + ": expected columns 'q_angsqrtamu' and 'v_mev'");
    std::vector<double> q, v;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        q.push_back(csvio::parse_double(t, r, *cq));
        v.push_back(csvio::parse_double(t, r, *cv));
    }
    return make(std::move(q), std::move(v));
}

namespace {

std::vector<double> fd_eigenvalues(const std::vector<double>& v, double h, double mass, int m) {
    const int n = static_cast<int>(v.size());
    const double t = constants::hbar2_over_amu_A2_meV / (2.0 * mass) / (h * h);
    Eigen::VectorXd diag(n), off(n - 1);
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * t + v[i];
    off.setConstant(-t);
    return tridiag_lowest_eigenvalues(diag, off, m);
}

// cubic (4-point) midpoint interpolation for the refined grid
std::vector<double> refine_potential(const std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> out(2 * n - 1);
    for (int i = 0; i < n; ++i) out[2 * i] = v[i];
    for (int i = 0; i < n - 1; ++i) {
        double m;
        if (i == 0)
            m = (5.0 * v[0] + 15.0 * v[1] - 5.0 * v[2] + v[3]) / 16.0;
        else if (i == n - 2)
            m = (5.0 * v[n - 1] + 15.0 * v[n - 2] - 5.0 * v[n - 3] + v[n - 4]) / 16.0;
        else
            m = (-v[i - 1] + 9.0 * v[i] + 9.0 * v[i + 1] - v[i + 2]) / 16.0;
        out[2 * i + 1] = m;
    }
    return out;
}

} // namespace

BoundStates solve_bound_states(const PotentialCurve& curve, int n_states, const GridOptions& opt) {
    if (n_states < 1) throw ValidationError("n_states must be at least 1");
    if (!(opt.mass_amu > 0.0)) throw ValidationError("effective mass must be positive");
    const int n = static_cast<int>(curve.q.size());
    if (n_states > n - 2) throw ValidationError("too many states for this grid");
    const double h = curve.spacing();

    BoundStates out;
    out.h = h;
    out.raw_energies_mev = fd_eigenvalues(curve.v_mev, h, opt.mass_amu, n_states);

    if (opt.richardson) {
        auto vfine = refine_potential(curve.v_mev);
        auto fine = fd_eigenvalues(vfine, 0.5 * h, opt.mass_amu, n_states);
        out.energies_mev.resize(n_states);
        for (int i = 0; i < n_states; ++i)
            out.energies_mev[i] = (4.0 * fine[i] - out.raw_energies_mev[i]) / 3.0;
    } else {
        out.energies_mev = out.raw_energies_mev;
    }

    {
        const double t = constants::hbar2_over_amu_A2_meV / (2.0 * opt.mass_amu) / (h * h);
        Eigen::VectorXd diag(n), off(n - 1);
        for (int i = 0; i < n; ++i) diag(i) = 2.0 * t + curve.v_mev[i];
        off.setConstant(-t);
        out.wavefunctions = tridiag_eigenvectors(diag, off, out.raw_energies_mev);
        out.wavefunctions /= std::sqrt(h);
    }

    if (opt.enforce_boundary_decay) {
        for (int j = 0; j < n_states; ++j) {
            double peak = out.wavefunctions.col(j).cwiseAbs().maxCoeff();
            double edge = std::max(std::abs(out.wavefunctions(0, j)),
                                   std::abs(out.wavefunctions(n - 1, j)));
            if (edge * edge >= 1e-8 * peak * peak)
                throw ValidationError("state " + std::to_string(j) +
                                      " does not decay at the grid boundary; widen the grid");
        }
    }

    // de Broglie resolution at the highest computed energy
    const double emax = out.energies_mev.back();
    const double vmin = *std::min_element(curve.v_mev.begin(), curve.v_mev.end());
    if (emax > vmin) {
        double kp = constants::hbar2_over_amu_A2_meV / (2.0 * opt.mass_amu);
        double lambda_min = 2.0 * constants::pi * std::sqrt(kp / (emax - vmin));
        if (h > lambda_min / 8.0)
            out.warnings.push_back("grid resolves fewer than 8 points per de Broglie wavelength "
                                   "at the highest computed energy");
    }
    return out;
}

namespace {

void require_symmetric(const PotentialCurve& c) {
    const std::size_t n = c.q.size();
    for (std::size_t i = 0; i < n / 2; ++i)
        if (std::abs(c.v_mev[i] - c.v_mev[n - 1 - i]) > 1e-9)
            throw ValidationError(
                "potential is not symmetric about its midpoint (max deviation above 1e-9 meV); "
                "use solve_bound_states directly for asymmetric wells");
}

double center_value(const PotentialCurve& c) {
    const std::size_t n = c.q.size();
    return n % 2 ? c.v_mev[n / 2] : std::max(c.v_mev[n / 2 - 1], c.v_mev[n / 2]);
}

} // namespace

TunnelingResult tunneling_splitting(const PotentialCurve& curve, const GridOptions& opt) {
    require_symmetric(curve);
    BoundStates bs = solve_bound_states(curve, 2, opt);

    TunnelingResult r;
    r.e0_mev = bs.energies_mev[0];
    r.e1_mev = bs.energies_mev[1];
    r.delta_e_mev = r.e1_mev - r.e0_mev;
    r.nu_tun_ghz = energy_to_frequency(r.delta_e_mev);
    r.h = bs.h;
    r.grid_points = static_cast<int>(curve.q.size());

    const int n = static_cast<int>(curve.q.size());
    for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += bs.wavefunctions(i, j) * bs.wavefunctions(n - 1 - i, j);
        Parity p = s > 0.0 ? Parity::Even : Parity::Odd;
        (j == 0 ? r.parity0 : r.parity1) = p;
    }

    const double vmin = *std::min_element(curve.v_mev.begin(), curve.v_mev.end());
    const double vtop = center_value(curve);
    r.barrier_mev = vtop - vmin;
    r.above_barrier = (r.e0_mev >= vtop) || (r.e1_mev >= vtop);
    return r;
}

double wkb_splitting(const PotentialCurve& curve, const GridOptions& opt) {
    require_symmetric(curve);
    BoundStates bs = solve_bound_states(curve, 1, opt);
    const double e0 = bs.energies_mev[0];
    const double vtop = center_value(curve);
    if (e0 >= vtop)
        throw ValidationError("ground state lies above the barrier top; no WKB splitting");

    const int n = static_cast<int>(curve.q.size());
    const auto& v = curve.v_mev;
    const auto& q = curve.q;

    // harmonic frequency at the right minimum from a local quadratic fit
    int im = n / 2;
    for (int i = n / 2; i < n; ++i)
        if (v[i] < v[im]) im = i;
    int lo = std::max(0, im - 4), hi = std::min(n - 1, im + 4);
    Eigen::MatrixXd a(hi - lo + 1, 3);
    Eigen::VectorXd b(hi - lo + 1);
    for (int i = lo; i <= hi; ++i) {
        double dq = q[i] - q[im];
        a.row(i - lo) << 1.0, dq, dq * dq;
        b(i - lo) = v[i];
    }
    Eigen::Vector3d c = (a.transpose() * a).ldlt().solve(a.transpose() * b);
    if (!(c(2) > 0.0)) throw ValidationError("no harmonic curvature at the well minimum");
    const double hw_well =
        std::sqrt(constants::hbar2_over_amu_A2_meV / opt.mass_amu * 2.0 * c(2));

    // inner turning points around the central barrier at E = E0
    int ic = n / 2;
    if (v[ic] <= e0) throw ValidationError("barrier region not resolved at E0");
    int il = ic;
    while (il > 0 && v[il] > e0) --il;
    int ir = ic;
    while (ir < n - 1 && v[ir] > e0) ++ir;
    if (v[il] > e0 || v[ir] > e0)
        throw ValidationError("turning points not bracketed by the grid");
    double ql = q[il] + (q[il + 1] - q[il]) * (e0 - v[il]) / (v[il + 1] - v[il]);
    double qr = q[ir - 1] + (q[ir] - q[ir - 1]) * (e0 - v[ir - 1]) / (v[ir] - v[ir - 1]);

    // trapezoid action between the interpolated turning points
    auto integrand = [&](double vi) {
        double arg = 2.0 * opt.mass_amu * (vi - e0) / constants::hbar2_over_amu_A2_meV;
        return arg > 0.0 ? std::sqrt(arg) : 0.0;
    };
    double s = 0.0;
    double prev_q = ql, prev_f = 0.0; // integrand vanishes at the turning point
    for (int i = il + 1; i < ir; ++i) {
        double f = integrand(v[i]);
        s += 0.5 * (prev_f + f) * (q[i] - prev_q);
        prev_q = q[i];
        prev_f = f;
    }
    s += 0.5 * prev_f * (qr - prev_q);

    return hw_well / constants::pi * std::exp(-s);
}

} // namespace sivib

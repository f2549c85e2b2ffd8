#include "sivib/apes.hpp"
#include "sivib/csvio.hpp"
#include "sivib/errors.hpp"
#include "sivib/hamiltonian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sivib {

ApesScan ApesScan::make(std::vector<double> q, std::vector<std::vector<double>> branches,
                        std::vector<int> branch_ids) {
    if (q.size() != branches.size()) throw ValidationError("scan q/branch length mismatch");
    for (std::size_t i = 1; i < q.size(); ++i)
        if (!(q[i] > q[i - 1]))
            throw ValidationError("scan coordinates must be strictly increasing");
    for (const auto& b : branches) {
        if (b.empty() || b.size() > 4)
            throw ValidationError("each scan point needs 1..4 branch energies");
        for (double e : b)
            if (!std::isfinite(e)) throw ValidationError("scan energies must be finite");
    }
    for (int id : branch_ids)
        if (id < 0 || id > 3) throw ValidationError("branch ids must be in 0..3");
    if (!branch_ids.empty())
        for (const auto& b : branches)
            if (b.size() > branch_ids.size())
                throw ValidationError("scan row has more branches than branch ids");
    ApesScan s;
    s.q = std::move(q);
    s.branches = std::move(branches);
    s.branch_ids = std::move(branch_ids);
    return s;
}

ApesScan ApesScan::load_csv(const std::string& path) {
    auto t = csvio::read_csv(path, true);
    auto cq = csvio::column(t, "q_angsqrtamu");
    if (!cq) throw ValidationError(path + ": expected column 'q_angsqrtamu'");
    std::array<std::optional<std::size_t>, 4> ce = {
        csvio::column(t, "e1_mev"), csvio::column(t, "e2_mev"), csvio::column(t, "e3_mev"),
        csvio::column(t, "e4_mev")};
    if (!ce[0]) throw ValidationError(path + ": expected column 'e1_mev'");
    std::vector<double> q;
    std::vector<std::vector<double>> branches;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        q.push_back(csvio::parse_double(t, r, *cq));
        std::vector<double> row;
        for (const auto& c : ce) {
            if (!c) break;
            auto v = csvio::parse_optional(t, r, *c);
            if (!v) break; // blanks terminate the branch list for this point
            row.push_back(*v);
        }
        if (row.empty())
            throw ValidationError(path + ": row " + std::to_string(r + 1) +
                                  ": at least one branch energy required");
        branches.push_back(std::move(row));
    }
    return make(std::move(q), std::move(branches));
}

std::size_t ApesScan::residual_count() const {
    std::size_t n = 0;
    for (const auto& b : branches) n += b.size();
    return n;
}

std::array<double, 4> apes_cut_point(const PjtParams& p, double q) {
    const double l = oscillator_length(p.hbar_omega_mev);
    const double x = q / l;
    Eigen::Matrix4d m = 0.5 * p.hbar_omega_mev * x * x * Eigen::Matrix4d::Identity();
    m += x * (p.f_u_mev * electronic::sigma_u_z() + p.f_g_mev * electronic::sigma_g_z());
    if (p.quad_g_mev != 0.0)
        m += p.quad_g_mev * x * x * (electronic::sigma_u_z() + electronic::sigma_g_z());
    m += electronic::correlation_matrix(p.lambda_mev, p.xi_mev);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
    std::array<double, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

std::vector<std::array<double, 4>> apes_cut(const PjtParams& p, const std::vector<double>& q) {
    std::vector<std::array<double, 4>> out;
    out.reserve(q.size());
    for (double x : q) {
        if (!std::isfinite(x)) throw ValidationError("cut coordinates must be finite");
        out.push_back(apes_cut_point(p, x));
    }
    return out;
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Eigen::VectorXd pjt_residuals(const ApesScan& scan, const Eigen::VectorXd& x) {
    // x = [f_g, f_u, hbar_omega, lambda, xi, quad_g]
    if (!(x(2) > 0.0)) return Eigen::VectorXd::Constant(1, kNan);
    PjtParams p = PjtParams::make(0.0, x(0), x(1), x(2), x(3), x(4), 0.0, 0.0, x(5));
    Eigen::VectorXd r(scan.residual_count());
    std::size_t k = 0;
    for (std::size_t i = 0; i < scan.q.size(); ++i) {
        auto model = apes_cut_point(p, scan.q[i]);
        const auto& data = scan.branches[i];
        for (std::size_t c = 0; c < data.size(); ++c) {
            int branch = scan.branch_ids.empty() ? static_cast<int>(c) : scan.branch_ids[c];
            r(k++) = model[branch] - data[c];
        }
    }
    return r;
}

} // namespace

PjtFitResult fit_pjt(const ApesScan& scan, const PjtParams& init, const PjtFitSettings& settings) {
    int nfree = 0;
    for (bool b : settings.free) nfree += b;
    if (scan.residual_count() < static_cast<std::size_t>(nfree))
        throw ValidationError("underdetermined fit: " + std::to_string(scan.residual_count()) +
                              " data values for " + std::to_string(nfree) + " free parameters");
    Eigen::VectorXd x0(6);
    x0 << init.f_g_mev, init.f_u_mev, init.hbar_omega_mev, init.lambda_mev, init.xi_mev,
        init.quad_g_mev;
    std::vector<bool> mask(settings.free.begin(), settings.free.end());
    auto fn = [&scan](const Eigen::VectorXd& x) { return pjt_residuals(scan, x); };
    FitResult fit = fit_multistart(fn, x0, mask, settings.lm);
    PjtFitResult out;
    out.params = PjtParams::make(init.pressure_gpa, fit.parameters(0), fit.parameters(1),
                                 fit.parameters(2), fit.parameters(3), fit.parameters(4),
                                 init.so_lambda_u_ghz, init.so_lambda_g_ghz, fit.parameters(5));
    out.fit = std::move(fit);
    return out;
}

double QuarticWell::value(double q) const {
    double t = (q / q0) * (q / q0) - 1.0;
    return barrier_mev * t * t + offset_mev;
}

QuarticFitResult fit_quartic_well(const ApesScan& scan, bool mirror_half, const FitOptions& opt) {
    for (const auto& b : scan.branches)
        if (b.size() != 1)
            throw ValidationError("quartic-well fit expects a single-branch scan");

    std::vector<double> q, v;
    if (mirror_half) {
        for (std::size_t i = scan.q.size(); i-- > 0;) {
            if (scan.q[i] <= 0.0) continue;
            q.push_back(-scan.q[i]);
            v.push_back(scan.branches[i][0]);
        }
    }
    for (std::size_t i = 0; i < scan.q.size(); ++i) {
        q.push_back(scan.q[i]);
        v.push_back(scan.branches[i][0]);
    }
    const std::size_t n = q.size();
    if (n < 4) throw ValidationError("quartic-well fit needs at least 4 points");

    // double-well shape test: minima on both halves, an interior maximum above both
    std::size_t mid = n / 2;
    std::size_t il = 0, ir = mid;
    for (std::size_t i = 0; i < mid; ++i)
        if (v[i] < v[il]) il = i;
    for (std::size_t i = mid; i < n; ++i)
        if (v[i] < v[ir]) ir = i;
    std::size_t ib = il;
    for (std::size_t i = il; i <= ir; ++i)
        if (v[i] > v[ib]) ib = i;
    if (!(ib > il && ib < ir) || !(v[ib] > v[il]) || !(v[ib] > v[ir]))
        throw ValidationError("scan is not double-well shaped (no interior maximum between minima)");

    Eigen::VectorXd x0(3);
    x0 << v[ib] - 0.5 * (v[il] + v[ir]),            // barrier
        0.5 * (std::abs(q[il]) + std::abs(q[ir])),  // q0
        0.5 * (v[il] + v[ir]);                      // offset
    auto fn = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        if (!(x(0) > 0.0) || !(x(1) > 0.0)) return Eigen::VectorXd::Constant(1, kNan);
        QuarticWell w{x(0), x(1), x(2)};
        Eigen::VectorXd r(n);
        for (std::size_t i = 0; i < n; ++i) r(i) = w.value(q[i]) - v[i];
        return r;
    };
    FitResult fit = fit_multistart(fn, x0, {true, true, true}, opt);
    QuarticFitResult out;
    out.well = QuarticWell{fit.parameters(0), fit.parameters(1), fit.parameters(2)};
    out.fit = std::move(fit);
    return out;
}

} // namespace sivib

#include "sivib/lsq.hpp"
#include "sivib/errors.hpp"

#include <cmath>
#include <random>

namespace sivib {

namespace {

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

Eigen::VectorXd expand(const Eigen::VectorXd& x0, const std::vector<bool>& mask,
                       const Eigen::VectorXd& xfree) {
    Eigen::VectorXd x = x0;
    int j = 0;
    for (int i = 0; i < x0.size(); ++i)
        if (mask[i]) x(i) = xfree(j++);
    return x;
}

} // namespace

FitResult levenberg_marquardt(const ResidualFn& fn, const Eigen::VectorXd& x0,
                              const std::vector<bool>& free_mask, const FitOptions& opt) {
    const int n = static_cast<int>(x0.size());
    if (static_cast<int>(free_mask.size()) != n)
        throw ValidationError("free-parameter mask length does not match the parameter vector");
    int nfree = 0;
    for (bool b : free_mask) nfree += b;
    if (nfree == 0) throw ValidationError("no free parameters to fit");

    Eigen::VectorXd xf(nfree);
    {
        int j = 0;
        for (int i = 0; i < n; ++i)
            if (free_mask[i]) xf(j++) = x0(i);
    }

    Eigen::VectorXd r = fn(x0);
    if (!finite(r)) throw ValidationError("initial parameters are outside the model domain");
    if (r.size() < nfree)
        throw ValidationError("underdetermined fit: " + std::to_string(r.size()) +
                              " residuals for " + std::to_string(nfree) + " free parameters");
    double ssr = r.squaredNorm();

    auto jacobian = [&](const Eigen::VectorXd& xfree_cur) {
        Eigen::MatrixXd j(r.size(), nfree);
        for (int c = 0; c < nfree; ++c) {
            double step = opt.fd_step_rel * std::max(std::abs(xfree_cur(c)), 1.0);
            Eigen::VectorXd xp = xfree_cur, xm = xfree_cur;
            xp(c) += step;
            xm(c) -= step;
            Eigen::VectorXd rp = fn(expand(x0, free_mask, xp));
            Eigen::VectorXd rm = fn(expand(x0, free_mask, xm));
            if (!finite(rp) || !finite(rm))
                throw ValidationError("Jacobian evaluation left the model domain");
            j.col(c) = (rp - rm) / (2.0 * step);
        }
        return j;
    };

    FitResult out;
    const double ssr0 = ssr;
    double damping = opt.damping_init;
    bool converged = false;
    int iter = 0;
    Eigen::MatrixXd jac;

    for (; iter < opt.max_iterations; ++iter) {
        jac = jacobian(xf);
        if (iter == 0) {
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac);
            qr.setThreshold(1e-12);
            if (qr.rank() < nfree)
                throw ValidationError("singular Jacobian: rank " + std::to_string(qr.rank()) +
                                      " of " + std::to_string(nfree) + " free parameters");
        }
        Eigen::MatrixXd jtj = jac.transpose() * jac;
        Eigen::VectorXd g = jac.transpose() * r;
        double gnorm = g.lpNorm<Eigen::Infinity>();

        bool accepted = false;
        double step_norm = 0.0;
        for (int tries = 0; tries < 40 && !accepted; ++tries) {
            Eigen::MatrixXd a = jtj;
            for (int i = 0; i < nfree; ++i) a(i, i) += damping * std::max(jtj(i, i), 1e-12);
            Eigen::VectorXd delta = a.ldlt().solve(-g);
            Eigen::VectorXd xtrial = xf + delta;
            Eigen::VectorXd rtrial = fn(expand(x0, free_mask, xtrial));
            if (finite(rtrial) && rtrial.squaredNorm() < ssr) {
                step_norm = delta.norm();
                xf = xtrial;
                r = rtrial;
                ssr = r.squaredNorm();
                damping = std::max(damping * 0.3, 1e-14);
                accepted = true;
            } else {
                damping *= 10.0;
            }
        }
        if (!accepted) {
            // stuck at a stationary point; treat small gradient as converged
            converged = gnorm <= opt.gradient_tol * std::max(1.0, ssr);
            break;
        }
        if (gnorm <= opt.gradient_tol * std::max(1.0, ssr) &&
            step_norm <= opt.step_tol * (1.0 + xf.norm())) {
            converged = true;
            ++iter;
            break;
        }
    }

    out.parameters = expand(x0, free_mask, xf);
    out.ssr = ssr;
    int dof = std::max<int>(1, static_cast<int>(r.size()) - nfree);
    out.rms = std::sqrt(ssr / static_cast<double>(r.size()));
    out.iterations = iter;
    out.converged = converged;

    // parameter uncertainties from the final Jacobian
    out.uncertainties = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(jtj);
    if (ldlt.info() == Eigen::Success) {
        Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(nfree, nfree));
        double sigma2 = ssr / static_cast<double>(dof);
        int j = 0;
        for (int i = 0; i < n; ++i)
            if (free_mask[i]) {
                double v = cov(j, j) * sigma2;
                out.uncertainties(i) = v > 0.0 ? std::sqrt(v) : 0.0;
                ++j;
            }
    }
    return out;
}

FitResult fit_multistart(const ResidualFn& fn, const Eigen::VectorXd& x0,
                         const std::vector<bool>& free_mask, const FitOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    FitResult best;
    bool have = false;
    for (int s = 0; s < std::max(1, opt.multistart); ++s) {
        Eigen::VectorXd start = x0;
        if (s > 0)
            for (int i = 0; i < start.size(); ++i)
                if (free_mask[i]) start(i) *= (1.0 + u(rng));
        try {
            FitResult fr = levenberg_marquardt(fn, start, free_mask, opt);
            if (!have || fr.ssr < best.ssr) {
                best = fr;
                have = true;
            }
        } catch (const ValidationError&) {
            if (s == 0) throw; // errors from the caller-provided start propagate
        }
    }
    if (!have) throw ValidationError("all fit starts failed");
    return best;
}

} // namespace sivib

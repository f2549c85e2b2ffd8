#ifndef SIVIB_LSQ_HPP
#define SIVIB_LSQ_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace sivib {

// Residual vector of a trial parameter set. Out-of-domain parameters may be
// signaled by returning any non-finite entry; such steps are rejected.
using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct FitOptions {
    int max_iterations = 300;
    double gradient_tol = 1e-9;
    double step_tol = 1e-11;
    double damping_init = 1e-3;
    double fd_step_rel = 1e-6; // central-difference Jacobian step, relative
    int multistart = 3;        // perturbed restarts (deterministic)
    std::uint64_t seed = 20240601;
};

struct FitResult {
    Eigen::VectorXd parameters;
    Eigen::VectorXd uncertainties; // rms * sqrt(diag (J^T J)^-1), 0 for frozen
    double rms = 0.0;
    double ssr = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Levenberg-Marquardt with central-difference Jacobian over the free
// parameters (free_mask true = optimized, false = frozen at x0).
FitResult levenberg_marquardt(const ResidualFn& fn, const Eigen::VectorXd& x0,
                              const std::vector<bool>& free_mask, const FitOptions& opt);

// Runs LM from x0 and (multistart - 1) deterministically perturbed starts,
// returns the lowest-SSR result.
FitResult fit_multistart(const ResidualFn& fn, const Eigen::VectorXd& x0,
                         const std::vector<bool>& free_mask, const FitOptions& opt);

} // namespace sivib

#endif

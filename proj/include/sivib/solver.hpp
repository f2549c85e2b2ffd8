#ifndef SIVIB_SOLVER_HPP
#define SIVIB_SOLVER_HPP

#include "sivib/errors.hpp"
#include "sivib/sparse.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <random>

namespace sivib {

struct SolverOptions {
    int k = 8;                  // number of lowest eigenpairs
    double tol = 1e-10;         // residual <= tol * ||H|| per pair
    std::uint64_t seed = 12345; // start-block seed; fixed for reproducibility
    int block = 4;              // expansion block size (resolves degeneracy <= block)
    int max_basis = 0;          // 0 = auto
    int max_iterations = 4000;  // expansion steps across restarts
};

struct Eigenpairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors; // dim x k, orthonormal
    int iterations = 0;
    int matvecs = 0;
    double max_residual = 0.0;
    double norm_bound = 0.0;
    bool converged = false;
};

namespace detail {

inline void apply_op(const SparseOperator& h, const double* x, double* y) {
    h.apply_real(x, y);
}
inline void apply_op(const SparseOperator& h, const std::complex<double>* x,
                     std::complex<double>* y) {
    h.apply(x, y);
}

// Rayleigh-Ritz over a block Krylov subspace with full reorthogonalization and
// thick restarts. Expansion directions are the residuals of the lowest
// unconverged Ritz pairs, so degenerate levels up to the block size converge
// together. Deterministic for a fixed seed.
template <typename Scalar>
Eigenpairs krylov_lowest(const SparseOperator& h, const SolverOptions& opt) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    const int n = h.dim();
    const int k = opt.k;
    if (k <= 0 || k >= n)
        throw ValidationError("eigensolver needs 0 < k < dim, got k=" + std::to_string(k) +
                              ", dim=" + std::to_string(n));
    if (!(opt.tol > 0.0)) throw ValidationError("eigensolver tolerance must be positive");

    const int b = std::clamp(opt.block, 1, n);
    int mmax = opt.max_basis > 0 ? opt.max_basis : std::max(6 * k + 2 * b, 160);
    mmax = std::min(mmax, n);
    mmax = std::max(mmax, std::min(n, k + b));

    const double norm = std::max(h.norm_bound(), 1e-300);
    const double tol_abs = opt.tol * norm;

    Mat v(n, mmax), w(n, mmax);
    Mat proj = Mat::Zero(mmax, mmax); // proj = V^H (H V)
    int m = 0;

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto randomize = [&](Eigen::Ref<Vec> col) {
        for (int i = 0; i < n; ++i) {
            if constexpr (std::is_same_v<Scalar, double>)
                col(i) = gauss(rng);
            else
                col(i) = Scalar(gauss(rng), gauss(rng));
        }
    };

    Eigenpairs out;
    out.norm_bound = norm;

    // Orthonormalizes the columns of t against V and each other, appending the
    // survivors; near-dependent columns are replaced by random ones. Returns
    // the number of columns added.
    auto append_block = [&](Mat t) -> int {
        int added = 0;
        for (int j = 0; j < t.cols() && m < mmax && m < n; ++j) {
            Vec c = t.col(j);
            for (int attempt = 0; attempt < 3; ++attempt) {
                for (int pass = 0; pass < 2; ++pass)
                    if (m > 0) c -= v.leftCols(m) * (v.leftCols(m).adjoint() * c).eval();
                double nrm = c.norm();
                if (nrm > 1e-8) {
                    v.col(m) = c / nrm;
                    ++m;
                    ++added;
                    break;
                }
                randomize(c); // candidate numerically inside span(V)
            }
        }
        return added;
    };

    // Computes H on newly appended columns and extends the projected matrix.
    auto extend = [&](int m_old) {
        for (int j = m_old; j < m; ++j) {
            apply_op(h, v.col(j).data(), w.col(j).data());
            ++out.matvecs;
        }
        int nnew = m - m_old;
        if (nnew <= 0) return;
        proj.block(0, m_old, m, nnew) = v.leftCols(m).adjoint() * w.middleCols(m_old, nnew);
        proj.block(m_old, 0, nnew, m_old) =
            proj.block(0, m_old, m_old, nnew).adjoint();
    };

    {
        Mat t(n, std::min(b, mmax));
        for (int j = 0; j < t.cols(); ++j) randomize(t.col(j));
        append_block(std::move(t));
        extend(0);
    }

    Eigen::VectorXd theta;
    Mat ritz_y;
    Eigen::MatrixXd resid_norm;

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        out.iterations = iter + 1;

        Mat msym = 0.5 * (proj.topLeftCorner(m, m) + proj.topLeftCorner(m, m).adjoint());
        Eigen::SelfAdjointEigenSolver<Mat> es(msym);
        theta = es.eigenvalues();
        ritz_y = es.eigenvectors();

        const int kk = std::min(k, m);
        Mat u = v.leftCols(m) * ritz_y.leftCols(kk);
        Mat hu = w.leftCols(m) * ritz_y.leftCols(kk);
        Mat res = hu - u * theta.head(kk).asDiagonal();

        std::vector<int> open;
        double worst = 0.0;
        for (int i = 0; i < kk; ++i) {
            double r = res.col(i).norm();
            worst = std::max(worst, r);
            if (r > tol_abs) open.push_back(i);
        }
        out.max_residual = worst;

        bool space_exhausted = (m >= n);
        if ((m >= k && open.empty()) || space_exhausted) {
            out.converged = (open.empty() && m >= k);
            out.values = theta.head(std::min(k, m));
            out.vectors = Eigen::MatrixXcd(n, out.values.size());
            for (int i = 0; i < out.values.size(); ++i)
                out.vectors.col(i) = u.col(i).template cast<std::complex<double>>();
            if (!out.converged)
                throw ConvergenceError(
                    "eigensolver exhausted the full space without reaching tolerance "
                    "(best residual " + std::to_string(worst) + ")",
                    worst);
            return out;
        }

        if (m + b > mmax) {
            // thick restart: keep the lowest Ritz vectors, restart the search
            int keep = std::min(m - b, std::max(2 * k, k + b));
            keep = std::max(keep, kk);
            Mat vk = v.leftCols(m) * ritz_y.leftCols(keep);
            Mat wk = w.leftCols(m) * ritz_y.leftCols(keep);
            v.leftCols(keep) = vk;
            w.leftCols(keep) = wk;
            proj.setZero();
            proj.topLeftCorner(keep, keep) = theta.head(keep).asDiagonal();
            m = keep;
        }

        const int want = open.empty() ? 1 : std::min<int>(b, static_cast<int>(open.size()));
        Mat t(n, want);
        for (int j = 0; j < t.cols(); ++j) {
            if (j < static_cast<int>(open.size()))
                t.col(j) = res.col(open[j]);
            else
                randomize(t.col(j));
        }
        int m_old = m;
        if (append_block(std::move(t)) == 0) {
            // no directions left to add
            Mat filler(n, 1);
            randomize(filler.col(0));
            if (append_block(std::move(filler)) == 0) continue;
        }
        extend(m_old);
    }

    throw ConvergenceError("eigensolver did not converge within the iteration cap (best residual " +
                               std::to_string(out.max_residual) + ")",
                           out.max_residual);
}

} // namespace detail

// k lowest eigenpairs of a Hermitian sparse operator. Real-symmetric input
// runs in real arithmetic.
inline Eigenpairs lowest_eigenpairs(const SparseOperator& h, const SolverOptions& opt) {
    if (h.is_real()) return detail::krylov_lowest<double>(h, opt);
    return detail::krylov_lowest<std::complex<double>>(h, opt);
}

} // namespace sivib

#endif

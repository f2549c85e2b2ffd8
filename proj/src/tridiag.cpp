#include "sivib/tridiag.hpp"
#include "sivib/errors.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace sivib {

int sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double x) {
    const int n = static_cast<int>(diag.size());
    // degenerate pivots are forced negative and counted (the dstebz convention),
    // which keeps the count exact to +-1 even when x hits a Ritz value
    double max_e2 = 1.0;
    for (int i = 0; i < n - 1; ++i) max_e2 = std::max(max_e2, off(i) * off(i));
    const double pivmin = std::numeric_limits<double>::min() * max_e2;
    int count = 0;
    double q = diag(0) - x;
    for (int i = 0;;) {
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0) ++count;
        if (++i >= n) break;
        q = diag(i) - x - off(i - 1) * off(i - 1) / q;
    }
    return count;
}

std::vector<double> tridiag_lowest_eigenvalues(const Eigen::VectorXd& diag,
                                               const Eigen::VectorXd& off, int m) {
    const int n = static_cast<int>(diag.size());
    if (m < 1 || m > n) throw ValidationError("eigenvalue count out of range");
    if (off.size() != n - 1) throw ValidationError("off-diagonal length must be n-1");

    double lo = diag(0), hi = diag(0);
    for (int i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(off(i - 1)) : 0.0) + (i < n - 1 ? std::abs(off(i)) : 0.0);
        lo = std::min(lo, diag(i) - r);
        hi = std::max(hi, diag(i) + r);
    }

    std::vector<double> out(m);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int j = 0; j < m; ++j) {
        double a = lo, b = hi;
        // j-th smallest: count(x) >= j+1 marks the upper side
        while (b - a > 4.0 * eps * std::max(std::abs(a), std::abs(b)) + 1e-300) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (sturm_count(diag, off, mid) >= j + 1)
                b = mid;
            else
                a = mid;
        }
        out[j] = 0.5 * (a + b);
        lo = a; // later eigenvalues cannot lie below this one
    }
    return out;
}

namespace {

// Solves (T - sigma I) x = b by partial-pivot LU on the tridiagonal.
struct ShiftedSolver {
    int n;
    Eigen::VectorXd dl, d, du, du2;
    std::vector<int> pivot;

    ShiftedSolver(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double sigma)
        : n(static_cast<int>(diag.size())), dl(n - 1), d(n), du(n - 1), du2(std::max(0, n - 2)),
          pivot(n, 0) {
        d = diag.array() - sigma;
        dl = off;
        du = off;
        du2.setZero();
        const double tiny = std::numeric_limits<double>::min() * 1e3;
        for (int i = 0; i < n - 1; ++i) {
            if (std::abs(d(i)) >= std::abs(dl(i))) {
                pivot[i] = 0;
                if (std::abs(d(i)) < tiny) d(i) = std::copysign(tiny, d(i) == 0.0 ? 1.0 : d(i));
                double m = dl(i) / d(i);
                dl(i) = m;
                d(i + 1) -= m * du(i);
                if (i < n - 2) du2(i) = 0.0;
            } else {
                pivot[i] = 1; // swap rows i, i+1
                double m = d(i) / dl(i);
                d(i) = dl(i);
                dl(i) = m;
                double t = du(i);
                du(i) = d(i + 1);
                d(i + 1) = t - m * d(i + 1);
                if (i < n - 2) {
                    du2(i) = du(i + 1);
                    du(i + 1) = -m * du(i + 1);
                }
            }
        }
        if (std::abs(d(n - 1)) < tiny) d(n - 1) = std::copysign(tiny, d(n - 1) == 0.0 ? 1.0 : d(n - 1));
    }

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
        Eigen::VectorXd x = rhs;
        for (int i = 0; i < n - 1; ++i) {
            if (pivot[i] == 0) {
                x(i + 1) -= dl(i) * x(i);
            } else {
                double t = x(i);
                x(i) = x(i + 1);
                x(i + 1) = t - dl(i) * x(i + 1);
            }
        }
        x(n - 1) /= d(n - 1);
        if (n >= 2) x(n - 2) = (x(n - 2) - du(n - 2) * x(n - 1)) / d(n - 2);
        for (int i = n - 3; i >= 0; --i)
            x(i) = (x(i) - du(i) * x(i + 1) - du2(i) * x(i + 2)) / d(i);
        return x;
    }
};

} // namespace

Eigen::MatrixXd tridiag_eigenvectors(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                                     const std::vector<double>& values) {
    const int n = static_cast<int>(diag.size());
    const int m = static_cast<int>(values.size());
    Eigen::MatrixXd vecs(n, m);
    std::mt19937_64 rng(987654321ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int j = 0; j < m; ++j) {
        ShiftedSolver lu(diag, off, values[j]);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = u(rng);
        x.normalize();
        for (int it = 0; it < 4; ++it) {
            x = lu.solve(x);
            for (int p = 0; p < j; ++p) x -= vecs.col(p).dot(x) * vecs.col(p);
            double nrm = x.norm();
            if (nrm == 0.0) { // collapsed onto previous vectors, reseed
                for (int i = 0; i < n; ++i) x(i) = u(rng);
                nrm = x.norm();
            }
            x /= nrm;
        }
        vecs.col(j) = x;
    }
    return vecs;
}

} // namespace sivib

#ifndef SIVIB_TRIDIAG_HPP
#define SIVIB_TRIDIAG_HPP

#include <Eigen/Dense>

#include <vector>

namespace sivib {

// Symmetric tridiagonal eigenproblems via Sturm-sequence bisection and
// inverse iteration. Independent of Eigen's dense QL path, which the tests
// use as an oracle.

// Number of eigenvalues strictly below x.
int sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double x);

// The m lowest eigenvalues, each bisected to ~4 ulp relative accuracy.
std::vector<double> tridiag_lowest_eigenvalues(const Eigen::VectorXd& diag,
                                               const Eigen::VectorXd& off, int m);

// Inverse-iteration eigenvectors for precomputed eigenvalues; columns are
// orthonormalized in order, which keeps near-degenerate pairs separated.
Eigen::MatrixXd tridiag_eigenvectors(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                                     const std::vector<double>& values);

} // namespace sivib

#endif

#ifndef SIVIB_HAMILTONIAN_HPP
#define SIVIB_HAMILTONIAN_HPP

#include "sivib/fock.hpp"
#include "sivib/params.hpp"
#include "sivib/sparse.hpp"

#include <Eigen/Dense>

namespace sivib {

// Electronic space: product of the ungerade and gerade orbital doublets,
// ordered {xx, xy, yx, yy} with the u component first (index = 2*u + g).
// Pauli operators act per doublet; sigma_u_* on the first factor, sigma_g_*
// on the second.
namespace electronic {

Eigen::Matrix4d sigma_u_z();
Eigen::Matrix4d sigma_u_x();
Eigen::Matrix4d sigma_g_z();
Eigen::Matrix4d sigma_g_x();
Eigen::Matrix4cd sigma_u_y();
Eigen::Matrix4cd sigma_g_y();

// Symmetry-adapted combinations as rows: {(xx+yy), (xy-yx), (xx-yy), (xy+yx)}/sqrt(2).
// The first two span the A (singlet) manifold, the last two the E doublet.
Eigen::Matrix4d symmetry_basis();

// Correlation splitting: +lambda / -lambda on the two A combinations and
// -xi on the E doublet, expressed in the product basis.
Eigen::Matrix4d correlation_matrix(double lambda_mev, double xi_mev);

// Diagonal of the electronic reflection factor (sigma_z x sigma_z).
Eigen::Vector4d reflection_diagonal();

} // namespace electronic

// Assembles H = H_osc + H_pJT + W + H_SO on basis (x) electronic, dimension
// 4 * basis.dim(), row index = 4*boson + electronic. Real-symmetric unless
// include_so && m_s != 0. Spin-orbit parameters are converted GHz -> meV.
// n_max = 0 with nonzero couplings flags the result as truncated.
SparseOperator build_hamiltonian(const PjtParams& p, const FockBasis& basis, int m_s,
                                 bool include_so);

} // namespace sivib

#endif

#include "sivib/hamiltonian.hpp"
#include "sivib/constants.hpp"
#include "sivib/errors.hpp"

#include <cmath>

namespace sivib {

namespace electronic {

Eigen::Matrix4d sigma_u_z() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << 1, 1, -1, -1;
    return m;
}

Eigen::Matrix4d sigma_u_x() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 2) = m(2, 0) = m(1, 3) = m(3, 1) = 1;
    return m;
}

Eigen::Matrix4d sigma_g_z() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << 1, -1, 1, -1;
    return m;
}

Eigen::Matrix4d sigma_g_x() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 1) = m(1, 0) = m(2, 3) = m(3, 2) = 1;
    return m;
}

Eigen::Matrix4cd sigma_u_y() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    const std::complex<double> i(0.0, 1.0);
    m(2, 0) = m(3, 1) = i;
    m(0, 2) = m(1, 3) = -i;
    return m;
}

Eigen::Matrix4cd sigma_g_y() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    const std::complex<double> i(0.0, 1.0);
    m(1, 0) = m(3, 2) = i;
    m(0, 1) = m(2, 3) = -i;
    return m;
}

Eigen::Matrix4d symmetry_basis() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4d u;
    // rows: (xx+yy), (xy-yx), (xx-yy), (xy+yx)
    u << s, 0, 0, s,
         0, s, -s, 0,
         s, 0, 0, -s,
         0, s, s, 0;
    return u;
}

Eigen::Matrix4d correlation_matrix(double lambda_mev, double xi_mev) {
    Eigen::Matrix4d u = symmetry_basis();
    Eigen::Vector4d diag(lambda_mev, -lambda_mev, -xi_mev, -xi_mev);
    return u.transpose() * diag.asDiagonal() * u;
}

Eigen::Vector4d reflection_diagonal() { return Eigen::Vector4d(1, -1, -1, 1); }

} // namespace electronic

namespace {

using Triplet = std::pair<std::pair<int, int>, std::complex<double>>;

void add_electronic_block(std::vector<Triplet>& t, int brow, int bcol, double amp,
                          const Eigen::Matrix4cd& m) {
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            if (m(a, c) != std::complex<double>(0.0, 0.0))
                t.push_back({{4 * brow + a, 4 * bcol + c}, amp * m(a, c)});
}

} // namespace

SparseOperator build_hamiltonian(const PjtParams& p, const FockBasis& basis, int m_s,
                                 bool include_so) {
    if (m_s < -1 || m_s > 1) throw ValidationError("m_s must be -1, 0 or +1");

    const int nb = basis.dim();
    const int dim = 4 * nb;
    const double hw = p.hbar_omega_mev;

    const Eigen::Matrix4cd coup_x =
        (p.f_u_mev * electronic::sigma_u_z() + p.f_g_mev * electronic::sigma_g_z())
            .cast<std::complex<double>>();
    const Eigen::Matrix4cd coup_y =
        (p.f_u_mev * electronic::sigma_u_x() + p.f_g_mev * electronic::sigma_g_x())
            .cast<std::complex<double>>();
    const Eigen::Matrix4cd quad_z =
        (p.quad_g_mev * (electronic::sigma_u_z() + electronic::sigma_g_z()))
            .cast<std::complex<double>>();
    const Eigen::Matrix4cd quad_x =
        (p.quad_g_mev * (electronic::sigma_u_x() + electronic::sigma_g_x()))
            .cast<std::complex<double>>();
    const Eigen::Matrix4cd corr =
        electronic::correlation_matrix(p.lambda_mev, p.xi_mev).cast<std::complex<double>>();

    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(dim) * 14);

    const bool quad = p.quad_g_mev != 0.0;

    for (int j = 0; j < nb; ++j) {
        auto [nx, ny] = basis.state(j);
        // oscillator diagonal + correlation block
        double osc = hw * (nx + ny + 1.0);
        for (int a = 0; a < 4; ++a) trip.push_back({{4 * j + a, 4 * j + a}, osc});
        add_electronic_block(trip, j, j, 1.0, corr);

        // X = (ax^dag + ax)/sqrt(2), Y likewise; each state handles the pair
        // with its raised neighbor, so every matrix element is added once.
        int up_x = basis.index(nx + 1, ny);
        if (up_x >= 0) {
            double amp = std::sqrt((nx + 1) / 2.0);
            add_electronic_block(trip, up_x, j, amp, coup_x);
            add_electronic_block(trip, j, up_x, amp, coup_x);
        }
        int up_y = basis.index(nx, ny + 1);
        if (up_y >= 0) {
            double amp = std::sqrt((ny + 1) / 2.0);
            add_electronic_block(trip, up_y, j, amp, coup_y);
            add_electronic_block(trip, j, up_y, amp, coup_y);
        }

        if (quad) {
            // (X^2 - Y^2) and 2XY, projected onto the truncated basis
            double diag_q = (2 * nx + 1) / 2.0 - (2 * ny + 1) / 2.0;
            if (diag_q != 0.0) add_electronic_block(trip, j, j, diag_q, quad_z);
            int up_xx = basis.index(nx + 2, ny);
            if (up_xx >= 0) {
                double amp = 0.5 * std::sqrt((nx + 1.0) * (nx + 2.0));
                add_electronic_block(trip, up_xx, j, amp, quad_z);
                add_electronic_block(trip, j, up_xx, amp, quad_z);
            }
            int up_yy = basis.index(nx, ny + 2);
            if (up_yy >= 0) {
                double amp = -0.5 * std::sqrt((ny + 1.0) * (ny + 2.0));
                add_electronic_block(trip, up_yy, j, amp, quad_z);
                add_electronic_block(trip, j, up_yy, amp, quad_z);
            }
            // 2XY couples (nx,ny) -> (nx+1,ny+1) and (nx+1,ny-1) sectors
            int up_xy = basis.index(nx + 1, ny + 1);
            if (up_xy >= 0) {
                double amp = 2.0 * std::sqrt((nx + 1) / 2.0) * std::sqrt((ny + 1) / 2.0);
                add_electronic_block(trip, up_xy, j, amp, quad_x);
                add_electronic_block(trip, j, up_xy, amp, quad_x);
            }
            int up_x_dn_y = basis.index(nx + 1, ny - 1);
            if (up_x_dn_y >= 0) {
                double amp = 2.0 * std::sqrt((nx + 1) / 2.0) * std::sqrt(ny / 2.0);
                add_electronic_block(trip, up_x_dn_y, j, amp, quad_x);
                add_electronic_block(trip, j, up_x_dn_y, amp, quad_x);
            }
        }
    }

    if (include_so && m_s != 0) {
        double lu = frequency_to_energy(p.so_lambda_u_ghz);
        double lg = frequency_to_energy(p.so_lambda_g_ghz);
        Eigen::Matrix4cd so =
            double(m_s) * (0.5 * lu * electronic::sigma_u_y() + 0.5 * lg * electronic::sigma_g_y());
        for (int j = 0; j < nb; ++j) add_electronic_block(trip, j, j, 1.0, so);
    }

    SparseOperator h = SparseOperator::from_triplets(dim, std::move(trip));
    if (basis.n_max() == 0 && (p.f_g_mev != 0.0 || p.f_u_mev != 0.0 || p.quad_g_mev != 0.0))
        h.set_coupling_truncated(true);
    return h;
}

} // namespace sivib

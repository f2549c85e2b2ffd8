#include "sivib/observables.hpp"
#include "sivib/errors.hpp"
#include "sivib/hamiltonian.hpp"

#include <cmath>

namespace sivib {

JtEnergies jt_energies(const PjtParams& p) {
    JtEnergies e;
    double sum = p.f_g_mev + p.f_u_mev;
    double dif = p.f_g_mev - p.f_u_mev;
    e.e_jt1_mev = sum * sum / (2.0 * p.hbar_omega_mev);
    e.e_jt2_mev = dif * dif / (2.0 * p.hbar_omega_mev);
    return e;
}

double vibronic_gap(const LabeledSpectrum& spec) {
    const Level* e = spec.lowest(Symmetry::E);
    const Level* a = spec.lowest_singlet();
    if (!e || !a)
        throw ValidationError(
            "vibronic gap needs a resolved A singlet and an E doublet among the computed "
            "levels; raise n_max or the eigenpair count k");
    return e->energy_mev - a->energy_mev;
}

namespace {

// v -> (E (x) 1_boson) v for a purely electronic 4x4 operator
Eigen::VectorXcd apply_electronic(const Eigen::Matrix4cd& op, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out(v.size());
    const int nb = static_cast<int>(v.size()) / 4;
    for (int j = 0; j < nb; ++j) out.segment<4>(4 * j) = op * v.segment<4>(4 * j);
    return out;
}

double restricted_half_spread(const Eigen::Matrix4cd& op, const Eigen::VectorXcd& a,
                              const Eigen::VectorXcd& b) {
    Eigen::VectorXcd oa = apply_electronic(op, a);
    Eigen::VectorXcd ob = apply_electronic(op, b);
    std::complex<double> maa = a.dot(oa), mab = a.dot(ob), mbb = b.dot(ob);
    // eigenvalue spread of the Hermitian 2x2 [[maa, mab], [mab*, mbb]]
    double tr_diff = maa.real() - mbb.real();
    return 0.5 * std::sqrt(tr_diff * tr_diff + 4.0 * std::norm(mab));
}

} // namespace

HamFactors ham_factors(const LabeledSpectrum& spec, const FockBasis& basis) {
    if (spec.vectors.rows() != 4 * basis.dim())
        throw ValidationError("spectrum does not match the given basis");
    const Level* e = spec.lowest(Symmetry::E);
    if (!e)
        throw ValidationError("no resolved E doublet in the spectrum; raise n_max or k");
    Eigen::VectorXcd a = spec.vectors.col(e->first);
    Eigen::VectorXcd b = spec.vectors.col(e->first + 1);
    HamFactors h;
    h.p_u = restricted_half_spread(electronic::sigma_u_y(), a, b);
    h.p_g = restricted_half_spread(electronic::sigma_g_y(), a, b);
    return h;
}

double so_splitting(double p_u, double p_g, double lambda_u_ghz, double lambda_g_ghz) {
    return p_u * lambda_u_ghz + p_g * lambda_g_ghz;
}

double so_splitting_direct(const PjtParams& p, const FockBasis& basis, int m_s,
                           const SolverOptions& opt) {
    if (m_s == 0) return 0.0;
    SparseOperator h0 = build_hamiltonian(p, basis, 0, false);
    Eigenpairs base = lowest_eigenpairs(h0, opt);
    LabeledSpectrum spec = classify_states(base, basis);
    const Level* e = spec.lowest(Symmetry::E);
    if (!e)
        throw ValidationError("no resolved E doublet in the spin-free spectrum; raise n_max or k");
    SparseOperator hso = build_hamiltonian(p, basis, m_s, true);
    Eigenpairs so = lowest_eigenpairs(hso, opt);
    if (so.values.size() <= e->first + 1)
        throw ValidationError("eigenpair count k too small to bracket the E doublet");
    double split_mev = so.values(e->first + 1) - so.values(e->first);
    return energy_to_frequency(split_mev);
}

VibronicReport solve_vibronic_point(const PjtParams& p, const VibronicOptions& opt) {
    VibronicReport r;
    r.pressure_gpa = p.pressure_gpa;
    auto jt = jt_energies(p);
    r.e_jt1_mev = jt.e_jt1_mev;
    r.e_jt2_mev = jt.e_jt2_mev;
    r.n_max = opt.n_max;

    FockBasis basis(opt.n_max);
    SolverOptions sopt;
    sopt.k = opt.k;
    sopt.tol = opt.tol;
    sopt.seed = opt.seed;

    SparseOperator h = build_hamiltonian(p, basis, 0, false);
    r.coupling_truncated = h.coupling_truncated();
    Eigenpairs pairs = lowest_eigenpairs(h, sopt);
    LabeledSpectrum spec = classify_states(pairs, basis, opt.deg_tol_mev);
    r.iterations = spec.iterations;
    r.max_residual = spec.max_residual;
    r.converged = spec.converged;
    r.delta_mev = vibronic_gap(spec);
    auto ham = ham_factors(spec, basis);
    r.p_u = ham.p_u;
    r.p_g = ham.p_g;
    r.p_mean = 0.5 * (ham.p_u + ham.p_g);
    r.delta_so_ghz = so_splitting(ham.p_u, ham.p_g, p.so_lambda_u_ghz, p.so_lambda_g_ghz);
    r.ground_symmetry = to_string(spec.levels.empty() ? Symmetry::Unresolved : spec.levels[0].sym);
    if (opt.direct_so)
        r.delta_so_direct_ghz = so_splitting_direct(p, basis, 1, sopt);
    return r;
}

} // namespace sivib

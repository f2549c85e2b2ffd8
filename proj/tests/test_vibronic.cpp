#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sivib/errors.hpp"
#include "sivib/fock.hpp"
#include "sivib/hamiltonian.hpp"
#include "sivib/solver.hpp"
#include "sivib/spectrum.hpp"

#include <Eigen/Dense>

#include <random>
#include <sstream>

using namespace sivib;

namespace {

PjtParams ambient() { return PjtParams::make(0.0, 103.96, 95.61, 77.39, 81.94, 52.52); }

Eigen::MatrixXcd to_dense(const SparseOperator& h) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(h.dim(), h.dim());
    std::ostringstream os;
    h.write_coordinate(os);
    std::istringstream is(os.str());
    int r, c;
    double re, im;
    while (is >> r >> c >> re >> im) m(r, c) = {re, im};
    return m;
}

} // namespace

TEST_CASE("fock basis dimensions and ordering") {
    CHECK(FockBasis(0).dim() == 1);
    CHECK(FockBasis(2).dim() == 6);
    CHECK(FockBasis(60).dim() == 1891);

    FockBasis b(2);
    // shells in order, n_x descending inside a shell
    CHECK(b.state(0) == std::pair<int, int>{0, 0});
    CHECK(b.state(1) == std::pair<int, int>{1, 0});
    CHECK(b.state(2) == std::pair<int, int>{0, 1});
    CHECK(b.state(3) == std::pair<int, int>{2, 0});
    CHECK(b.state(5) == std::pair<int, int>{0, 2});

    FockBasis big(17);
    for (int i = 0; i < big.dim(); ++i) {
        auto [nx, ny] = big.state(i);
        CHECK(big.index(nx, ny) == i);
    }
    CHECK(big.index(18, 0) == -1);
    CHECK(big.index(-1, 0) == -1);
    CHECK_THROWS_AS(FockBasis(-1), ValidationError);
}

TEST_CASE("hamiltonian dimensions and hermiticity") {
    FockBasis b(2);
    auto h = build_hamiltonian(ambient(), b, 0, false);
    CHECK(h.dim() == 24);
    CHECK(h.hermiticity_violation() < 1e-12);
    CHECK(h.is_real());

    FockBasis b2(8);
    auto p = ambient();
    p.so_lambda_u_ghz = 1897.5;
    p.so_lambda_g_ghz = 187.5;
    auto hso = build_hamiltonian(p, b2, 1, true);
    CHECK_FALSE(hso.is_real());
    CHECK(hso.hermiticity_violation() < 1e-12);

    auto pq = ambient();
    pq.quad_g_mev = 3.0;
    auto hq = build_hamiltonian(pq, b2, 0, false);
    CHECK(hq.hermiticity_violation() < 1e-12);
}

TEST_CASE("truncation warning at n_max zero") {
    FockBasis b(0);
    auto h = build_hamiltonian(ambient(), b, 0, false);
    CHECK(h.coupling_truncated());
    auto p0 = PjtParams::make(0, 0, 0, 77.39, 81.94, 52.52);
    CHECK_FALSE(build_hamiltonian(p0, b, 0, false).coupling_truncated());
}

TEST_CASE("decoupled oscillator spectrum") {
    auto p = PjtParams::make(0, 0, 0, 77.39, 0, 0);
    FockBasis b(6);
    auto h = build_hamiltonian(p, b, 0, false);
    SolverOptions opt;
    opt.k = 4;
    auto pairs = lowest_eigenpairs(h, opt);
    for (int i = 0; i < 4; ++i) CHECK(pairs.values(i) == doctest::Approx(77.39).epsilon(1e-10));
}

TEST_CASE("electronic-only correlation spectrum") {
    // n_max = 0 and F = 0: the correlation term on top of the zero-point energy
    auto p = PjtParams::make(0, 0, 0, 77.39, 81.94, 52.52);
    FockBasis b(0);
    auto h = build_hamiltonian(p, b, 0, false);
    auto dense = to_dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    CHECK(es.eigenvalues()(0) == doctest::Approx(77.39 - 81.94).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(77.39 - 52.52).epsilon(1e-12));
    CHECK(es.eigenvalues()(2) == doctest::Approx(77.39 - 52.52).epsilon(1e-12));
    CHECK(es.eigenvalues()(3) == doctest::Approx(77.39 + 81.94).epsilon(1e-12));
}

TEST_CASE("sparse eigensolver matches a dense oracle") {
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 24;
    std::vector<std::pair<std::pair<int, int>, std::complex<double>>> trip;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::complex<double> v(gauss(rng), i == j ? 0.0 : gauss(rng));
            trip.push_back({{i, j}, v});
            if (i != j) trip.push_back({{j, i}, std::conj(v)});
        }
    auto h = SparseOperator::from_triplets(n, std::move(trip));
    REQUIRE(h.hermiticity_violation() < 1e-12);

    SolverOptions opt;
    opt.k = 6;
    opt.tol = 1e-12;
    auto pairs = lowest_eigenpairs(h, opt);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(h));
    for (int i = 0; i < 6; ++i)
        CHECK(pairs.values(i) ==
              doctest::Approx(es.eigenvalues()(i)).epsilon(1e-9));

    // determinism
    auto again = lowest_eigenpairs(h, opt);
    for (int i = 0; i < 6; ++i) CHECK(pairs.values(i) == again.values(i));
}

TEST_CASE("eigensolver input validation") {
    FockBasis b(1);
    auto h = build_hamiltonian(ambient(), b, 0, false);
    SolverOptions opt;
    opt.k = h.dim();
    CHECK_THROWS_AS(lowest_eigenpairs(h, opt), ValidationError);
    opt.k = 4;
    opt.max_iterations = 1;
    opt.tol = 1e-14;
    FockBasis big(20);
    auto hbig = build_hamiltonian(ambient(), big, 0, false);
    CHECK_THROWS_AS(lowest_eigenpairs(hbig, opt), ConvergenceError);
}

TEST_CASE("eigenvector orthonormality and doublet structure") {
    FockBasis b(30);
    auto h = build_hamiltonian(ambient(), b, 0, false);
    SolverOptions opt;
    opt.k = 10;
    auto pairs = lowest_eigenpairs(h, opt);
    Eigen::MatrixXcd overlap = pairs.vectors.adjoint() * pairs.vectors;
    CHECK((overlap - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-10);

    auto spec = classify_states(pairs, b);
    for (const auto& lvl : spec.levels) {
        if (lvl.sym == Symmetry::E) CHECK(lvl.degeneracy == 2);
        if (lvl.sym == Symmetry::A1 || lvl.sym == Symmetry::A2) CHECK(lvl.degeneracy == 1);
    }
    // dark singlet ground state with the bright doublet above it
    REQUIRE(!spec.levels.empty());
    CHECK(spec.levels[0].sym == Symmetry::A2);
    CHECK(spec.levels[0].degeneracy == 1);
    CHECK(spec.levels[1].sym == Symmetry::E);
}

TEST_CASE("reflection bookkeeping") {
    FockBasis b(3);
    const int nb = b.dim();
    // reflection-even electronic combination (xx+yy)/sqrt(2) with one odd-parity
    // y quantum flips the total reflection to -1
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * nb);
    int j = b.index(0, 1);
    v(4 * j + 0) = 1.0 / std::sqrt(2.0);
    v(4 * j + 3) = 1.0 / std::sqrt(2.0);
    CHECK(reflection_expectation(v, b) == doctest::Approx(-1.0).epsilon(1e-14));

    // the same combination on the boson vacuum is reflection-even
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(4 * nb);
    w(0) = w(3) = 1.0 / std::sqrt(2.0);
    CHECK(reflection_expectation(w, b) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("zero-coupling labels") {
    auto p = PjtParams::make(0, 0, 0, 77.39, 81.94, 52.52);
    FockBasis b(4);
    auto h = build_hamiltonian(p, b, 0, false);
    SolverOptions opt;
    opt.k = 4;
    auto spec = classify_states(lowest_eigenpairs(h, opt), b);
    // lowest: correlation-favored singlet; then the E doublet
    REQUIRE(spec.levels.size() >= 2);
    CHECK(spec.levels[0].degeneracy == 1);
    CHECK(spec.levels[0].energy_mev == doctest::Approx(77.39 - 81.94).epsilon(1e-9));
    CHECK(reflection_expectation(spec.vectors.col(0), b) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(spec.levels[1].sym == Symmetry::E);
    CHECK(spec.levels[1].energy_mev == doctest::Approx(77.39 - 52.52).epsilon(1e-9));
}

TEST_CASE("gauge and swap invariance of the spectrum") {
    FockBasis b(14);
    SolverOptions opt;
    opt.k = 8;
    auto p = ambient();
    auto swapped = PjtParams::make(0, p.f_u_mev, p.f_g_mev, p.hbar_omega_mev, p.lambda_mev,
                                   p.xi_mev);
    auto e1 = lowest_eigenpairs(build_hamiltonian(p, b, 0, false), opt);
    auto e2 = lowest_eigenpairs(build_hamiltonian(swapped, b, 0, false), opt);
    for (int i = 0; i < 8; ++i)
        CHECK(e1.values(i) == doctest::Approx(e2.values(i)).epsilon(1e-9));

    // sign gauge: couplings are stored in nonnegative canonical form
    auto neg = PjtParams::make(0, -p.f_g_mev, -p.f_u_mev, p.hbar_omega_mev, p.lambda_mev,
                               p.xi_mev);
    CHECK(neg.f_g_mev == p.f_g_mev);
    CHECK(neg.f_u_mev == p.f_u_mev);
}

TEST_CASE("low spectrum is converged in the boson truncation") {
    SolverOptions opt;
    opt.k = 6;
    FockBasis b50(50), b60(60);
    auto e50 = lowest_eigenpairs(build_hamiltonian(ambient(), b50, 0, false), opt);
    auto e60 = lowest_eigenpairs(build_hamiltonian(ambient(), b60, 0, false), opt);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(e50.values(i) - e60.values(i)) < 0.01);
}

TEST_CASE("coordinate export round-trips") {
    FockBasis b(1);
    auto h = build_hamiltonian(ambient(), b, 0, false);
    auto dense = to_dense(h);
    CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(dense.cwiseAbs().maxCoeff() > 0.0);
    // oscillator diagonal present
    CHECK(dense(0, 0).real() == doctest::Approx(77.39 + (81.94 / 2 - 52.52 / 2)).epsilon(1e-12));
}

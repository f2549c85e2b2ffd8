#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sivib/apes.hpp"
#include "sivib/errors.hpp"
#include "sivib/observables.hpp"

#include <cmath>
#include <fstream>
#include <random>

using namespace sivib;

namespace {

PjtParams ambient() { return PjtParams::make(0.0, 103.96, 95.61, 77.39, 81.94, 52.52); }

ApesScan scan_from_model(const PjtParams& p, double qmax, int n, double noise_sigma = 0.0,
                         unsigned seed = 0) {
    std::vector<double> q(n);
    for (int i = 0; i < n; ++i) q[i] = -qmax + 2.0 * qmax * i / (n - 1);
    auto cut = apes_cut(p, q);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise_sigma);
    std::vector<std::vector<double>> branches(n);
    for (int i = 0; i < n; ++i)
        for (double e : cut[i]) branches[i].push_back(e + (noise_sigma > 0 ? gauss(rng) : 0.0));
    return ApesScan::make(std::move(q), std::move(branches));
}

} // namespace

TEST_CASE("cut spectrum at the symmetric point") {
    auto b = apes_cut_point(ambient(), 0.0);
    CHECK(b[0] == doctest::Approx(-81.94).epsilon(1e-12));
    CHECK(b[1] == doctest::Approx(-52.52).epsilon(1e-12));
    CHECK(b[2] == doctest::Approx(-52.52).epsilon(1e-12));
    CHECK(b[3] == doctest::Approx(81.94).epsilon(1e-12));

    // the E pair is exactly degenerate at q = 0; it sits in the middle of the
    // sorted branches whenever lambda exceeds xi
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(1.0, 120.0);
    for (int t = 0; t < 50; ++t) {
        double xi = u(rng);
        double lambda = xi + u(rng);
        auto p = PjtParams::make(0, u(rng), u(rng), u(rng), lambda, xi);
        auto c = apes_cut_point(p, 0.0);
        CHECK(std::abs(c[2] - c[1]) < 1e-10);
    }
    for (int t = 0; t < 50; ++t) {
        auto p = PjtParams::make(0, u(rng), u(rng), u(rng), u(rng), u(rng));
        auto c = apes_cut_point(p, 0.0);
        double pair_gap = std::min({c[1] - c[0], c[2] - c[1], c[3] - c[2]});
        CHECK(pair_gap < 1e-10); // some adjacent pair is the degenerate E level
    }
}

TEST_CASE("lowest branch minimum equals the stabilization energy") {
    auto p = PjtParams::make(0, 90.0, 90.0, 80.0, 0, 0);
    double l = oscillator_length(p.hbar_omega_mev);
    double xstar = (p.f_g_mev + p.f_u_mev) / p.hbar_omega_mev;
    auto c = apes_cut_point(p, -xstar * l);
    double ejt1 = jt_energies(p).e_jt1_mev;
    CHECK(c[0] == doctest::Approx(-ejt1).epsilon(1e-12));
}

TEST_CASE("asymptotic branches are dominated by the confinement term") {
    auto p = ambient();
    double l = oscillator_length(p.hbar_omega_mev);
    auto ratio_spread = [&](double x) {
        auto c = apes_cut_point(p, x * l);
        double quad = 0.5 * p.hbar_omega_mev * x * x;
        double worst = 0.0;
        for (double e : c) worst = std::max(worst, std::abs(e / quad - 1.0));
        return worst;
    };
    CHECK(ratio_spread(50.0) < 0.15);
    CHECK(ratio_spread(200.0) < ratio_spread(50.0));
    CHECK(ratio_spread(200.0) < 0.04);

    // the outer branch separation grows with the fixed slope 2 (f_g + f_u)
    auto far1 = apes_cut_point(p, 50.0 * l);
    auto far2 = apes_cut_point(p, 60.0 * l);
    double slope = ((far2[3] - far2[0]) - (far1[3] - far1[0])) / (10.0 * l);
    CHECK(slope == doctest::Approx(2.0 * (p.f_g_mev + p.f_u_mev) / l).epsilon(1e-3));
}

TEST_CASE("sorted branches stay continuous under refinement") {
    auto p = ambient();
    auto maxstep = [&](int n) {
        std::vector<double> q(n);
        for (int i = 0; i < n; ++i) q[i] = -0.8 + 1.6 * i / (n - 1.0);
        auto c = apes_cut(p, q);
        double worst = 0.0;
        for (int i = 1; i < n; ++i)
            for (int bidx = 0; bidx < 4; ++bidx)
                worst = std::max(worst, std::abs(c[i][bidx] - c[i - 1][bidx]));
        return worst;
    };
    double coarse = maxstep(101);
    double fine = maxstep(201);
    CHECK(fine <= 0.6 * coarse);
}

TEST_CASE("model fit recovers exact synthetic parameters") {
    auto truth = ambient();
    auto scan = scan_from_model(truth, 0.7, 57);
    auto init = PjtParams::make(0, truth.f_g_mev * 1.05, truth.f_u_mev * 0.95,
                                truth.hbar_omega_mev * 1.04, truth.lambda_mev * 1.06,
                                truth.xi_mev * 0.94);
    auto res = fit_pjt(scan, init);
    CHECK(res.fit.converged);
    CHECK(res.params.f_g_mev == doctest::Approx(truth.f_g_mev).epsilon(0.01));
    CHECK(res.params.f_u_mev == doctest::Approx(truth.f_u_mev).epsilon(0.01));
    CHECK(res.params.hbar_omega_mev == doctest::Approx(truth.hbar_omega_mev).epsilon(0.01));
    CHECK(res.params.lambda_mev == doctest::Approx(truth.lambda_mev).epsilon(0.01));
    CHECK(res.params.xi_mev == doctest::Approx(truth.xi_mev).epsilon(0.01));
    CHECK(res.fit.rms < 1e-6);
}

TEST_CASE("model fit tolerates gaussian noise") {
    auto truth = ambient();
    auto scan = scan_from_model(truth, 0.7, 57, 1.0, 777);
    auto init = PjtParams::make(0, truth.f_g_mev * 1.05, truth.f_u_mev * 0.95,
                                truth.hbar_omega_mev, truth.lambda_mev, truth.xi_mev);
    auto res = fit_pjt(scan, init);
    CHECK(res.params.f_g_mev == doctest::Approx(truth.f_g_mev).epsilon(0.05));
    CHECK(res.params.f_u_mev == doctest::Approx(truth.f_u_mev).epsilon(0.05));
    CHECK(res.params.hbar_omega_mev == doctest::Approx(truth.hbar_omega_mev).epsilon(0.05));
    CHECK(res.params.lambda_mev == doctest::Approx(truth.lambda_mev).epsilon(0.05));
    CHECK(res.params.xi_mev == doctest::Approx(truth.xi_mev).epsilon(0.05));
    CHECK(res.fit.rms == doctest::Approx(1.0).epsilon(0.3));
    CHECK(res.fit.uncertainties.maxCoeff() > 0.0);
}

TEST_CASE("underdetermined fits are rejected") {
    std::vector<double> q{-0.5, 0.5};
    std::vector<std::vector<double>> branches{{1.0}, {1.0}};
    auto scan = ApesScan::make(q, branches);
    CHECK_THROWS_AS(fit_pjt(scan, ambient()), ValidationError);
}

TEST_CASE("quartic well fit round-trips exact samples") {
    QuarticWell truth{115.0, 0.5, 0.0};
    std::vector<double> q(81);
    std::vector<std::vector<double>> v(81);
    for (int i = 0; i < 81; ++i) {
        q[i] = -1.0 + 2.0 * i / 80.0;
        v[i] = {truth.value(q[i])};
    }
    auto res = fit_quartic_well(ApesScan::make(q, v));
    CHECK(res.fit.converged);
    CHECK(res.well.barrier_mev == doctest::Approx(115.0).epsilon(1e-8));
    CHECK(res.well.q0 == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(std::abs(res.well.offset_mev) < 1e-6);
    // barrier is the value difference between the saddle and a minimum
    CHECK(res.well.value(0.0) - res.well.value(res.well.q0) ==
          doctest::Approx(res.well.barrier_mev).epsilon(1e-12));
}

TEST_CASE("quartic well fit is offset and reflection invariant") {
    QuarticWell truth{115.0, 0.5, -10.0};
    std::vector<double> q(64), qr(64);
    std::vector<std::vector<double>> v(64), vr(64);
    for (int i = 0; i < 64; ++i) {
        q[i] = -1.1 + 2.2 * i / 63.0;
        v[i] = {truth.value(q[i])};
    }
    for (int i = 0; i < 64; ++i) {
        qr[i] = -q[63 - i];
        vr[i] = {truth.value(q[63 - i])};
    }
    auto res = fit_quartic_well(ApesScan::make(q, v));
    CHECK(res.well.barrier_mev == doctest::Approx(115.0).epsilon(1e-7));
    CHECK(res.well.offset_mev == doctest::Approx(-10.0).epsilon(1e-7));
    auto mirrored = fit_quartic_well(ApesScan::make(qr, vr));
    CHECK(mirrored.well.barrier_mev == doctest::Approx(res.well.barrier_mev).epsilon(1e-7));
}

TEST_CASE("non-double-well scans are rejected") {
    std::vector<double> q(64);
    std::vector<std::vector<double>> v(64);
    for (int i = 0; i < 64; ++i) {
        q[i] = i * 0.1;
        v[i] = {2.0 * q[i]}; // monotone
    }
    CHECK_THROWS_AS(fit_quartic_well(ApesScan::make(q, v)), ValidationError);
}

TEST_CASE("half scans can be mirrored") {
    QuarticWell truth{90.0, 0.8, 2.0};
    std::vector<double> q;
    std::vector<std::vector<double>> v;
    for (int i = 0; i <= 40; ++i) {
        double x = 1.6 * i / 40.0;
        q.push_back(x);
        v.push_back({truth.value(x)});
    }
    auto res = fit_quartic_well(ApesScan::make(q, v), /*mirror_half=*/true);
    CHECK(res.well.barrier_mev == doctest::Approx(90.0).epsilon(1e-7));
    CHECK(res.well.q0 == doctest::Approx(0.8).epsilon(1e-7));
}

TEST_CASE("scan csv with blank branches") {
    std::string path = "sivib_test_scan.csv";
    {
        std::ofstream f(path);
        f << "q_angsqrtamu,e1_mev,e2_mev,e3_mev,e4_mev\n";
        f << "-0.5,-10.0,,\n";
        f << "0.0,-12.0,-5.0,-5.0,80.0\n";
        f << "0.5,-10.0,,,\n";
    }
    auto scan = ApesScan::load_csv(path);
    REQUIRE(scan.q.size() == 3);
    CHECK(scan.branches[0].size() == 1);
    CHECK(scan.branches[1].size() == 4);
    CHECK(scan.residual_count() == 6);
}

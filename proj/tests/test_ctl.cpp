#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sivib/ctl.hpp"
#include "sivib/errors.hpp"

#include <cmath>
#include <random>

using namespace sivib;

TEST_CASE("finite-size correction") {
    CHECK(fnv_correction({0, 0.0, 0.37, 0.5}) == 0.37);
    CHECK(fnv_correction({-1, 0.0, 0.10, 0.02}) == doctest::Approx(0.08).epsilon(1e-14));
    CHECK(fnv_correction({+1, 0.0, 0.10, 0.02}) == doctest::Approx(0.12).epsilon(1e-14));
}

TEST_CASE("transition level arithmetic") {
    ChargeStateRecord a{0, 1.0, 0.0, 0.0};
    ChargeStateRecord b{-1, 1.0, 0.0, 0.0};
    CHECK(transition_level(a, b, 0.3) == doctest::Approx(-0.3).epsilon(1e-14));
    CHECK_THROWS_AS(transition_level(a, a, 0.0), ValidationError);

    // constructed so the level lands exactly 1 eV above the VBM
    double evbm = 5.5;
    ChargeStateRecord p{0, -0.2, 0.2, 0.0};
    ChargeStateRecord q{-1, 1.0 + evbm - 0.05, 0.03, -0.02};
    // corrected(q) = 0.03 + 0.02 = 0.05, so totals difference is -(1 + evbm)
    CHECK(transition_level(p, q, evbm) == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        ChargeStateRecord r1{1, u(rng), u(rng), u(rng)};
        ChargeStateRecord r2{-1, u(rng), u(rng), u(rng)};
        double e = u(rng);
        CHECK(transition_level(r1, r2, e) ==
              doctest::Approx(transition_level(r2, r1, e)).epsilon(1e-12));
    }
}

namespace {

StrainSeries line(double x0, double x1, double y0, double y1) {
    return StrainSeries::make(AxisKind::PressureGpa, {x0, x1}, {y0, y1}, "eV");
}

} // namespace

TEST_CASE("photostability crossing at 100 GPa") {
    ThresholdCurves c;
    c.zpl = line(0.0, 180.0, 1.35, 1.35 + 0.00086 * 180.0);
    c.thresholds.emplace_back("ionization", line(0.0, 180.0, 1.436, 1.436));
    auto rep = photostability_windows(c);
    REQUIRE(rep.windows.size() == 2);
    CHECK(rep.windows[0].photostable);
    CHECK_FALSE(rep.windows[1].photostable);
    REQUIRE(rep.crossings.size() == 1);
    CHECK(rep.crossings[0] == doctest::Approx(100.0).epsilon(1e-9));

    // the reported crossing satisfies zpl == min threshold to 1e-9 eV
    double x = rep.crossings[0];
    double zpl = 1.35 + 0.00086 * x;
    CHECK(std::abs(zpl - 1.436) < 1e-9);

    // exact partition of the common range
    CHECK(rep.windows.front().from_x == 0.0);
    CHECK(rep.windows.back().to_x == 180.0);
    for (std::size_t i = 1; i < rep.windows.size(); ++i)
        CHECK(rep.windows[i].from_x == rep.windows[i - 1].to_x);
}

TEST_CASE("uniform status windows") {
    ThresholdCurves below;
    below.zpl = line(0.0, 100.0, 1.0, 1.1);
    below.thresholds.emplace_back("t", line(0.0, 100.0, 2.0, 2.0));
    auto rb = photostability_windows(below);
    REQUIRE(rb.windows.size() == 1);
    CHECK(rb.windows[0].photostable);
    CHECK(rb.crossings.empty());

    ThresholdCurves above;
    above.zpl = line(0.0, 100.0, 3.0, 3.1);
    above.thresholds.emplace_back("t", line(0.0, 100.0, 2.0, 2.0));
    auto ra = photostability_windows(above);
    REQUIRE(ra.windows.size() == 1);
    CHECK_FALSE(ra.windows[0].photostable);
}

TEST_CASE("multiple thresholds take the pointwise minimum") {
    ThresholdCurves c;
    c.zpl = line(0.0, 100.0, 1.4, 1.4);
    // the minimum of the crossing lines rises above the zpl only in the middle
    c.thresholds.emplace_back("down", line(0.0, 100.0, 2.0, 1.0));
    c.thresholds.emplace_back("up", line(0.0, 100.0, 1.0, 2.0));
    auto rep = photostability_windows(c);
    REQUIRE(rep.windows.size() == 3);
    CHECK_FALSE(rep.windows[0].photostable);
    CHECK(rep.windows[1].photostable);
    CHECK_FALSE(rep.windows[2].photostable);
    REQUIRE(rep.crossings.size() == 2);
    CHECK(rep.crossings[0] == doctest::Approx(40.0).epsilon(1e-9));
    CHECK(rep.crossings[1] == doctest::Approx(60.0).epsilon(1e-9));
}

TEST_CASE("offset invariance of window boundaries") {
    ThresholdCurves c;
    c.zpl = line(0.0, 180.0, 1.35, 1.35 + 0.00086 * 180.0);
    c.thresholds.emplace_back("t", line(0.0, 180.0, 1.436, 1.436));
    auto r1 = photostability_windows(c);
    ThresholdCurves shifted = c;
    for (auto& y : shifted.zpl.y) y += 0.7;
    for (auto& [name, s] : shifted.thresholds)
        for (auto& y : s.y) y += 0.7;
    auto r2 = photostability_windows(shifted);
    REQUIRE(r1.crossings.size() == r2.crossings.size());
    for (std::size_t i = 0; i < r1.crossings.size(); ++i)
        CHECK(r1.crossings[i] == doctest::Approx(r2.crossings[i]).epsilon(1e-9));
}

TEST_CASE("disjoint curves are rejected") {
    ThresholdCurves c;
    c.zpl = line(0.0, 10.0, 1.0, 1.0);
    c.thresholds.emplace_back("t", line(20.0, 30.0, 2.0, 2.0));
    CHECK_THROWS_AS(photostability_windows(c), ValidationError);
}

TEST_CASE("multiple crossings carve alternating windows") {
    // zigzag zpl against a flat threshold
    auto zpl = StrainSeries::make(AxisKind::PressureGpa, {0.0, 25.0, 50.0, 75.0, 100.0},
                                  {1.0, 2.0, 1.0, 2.0, 1.0}, "eV");
    ThresholdCurves c;
    c.zpl = zpl;
    c.thresholds.emplace_back("t", line(0.0, 100.0, 1.5, 1.5));
    auto rep = photostability_windows(c);
    CHECK(rep.windows.size() == 5);
    CHECK(rep.crossings.size() == 4);
    double total = 0.0;
    for (const auto& w : rep.windows) total += w.to_x - w.from_x;
    CHECK(total == doctest::Approx(100.0).epsilon(1e-12));
}

#include "sivib/ctl.hpp"
#include "sivib/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sivib {

double fnv_correction(const ChargeStateRecord& rec) {
    return rec.e_el_ev + rec.q * rec.delta_v_ev;
}

double transition_level(const ChargeStateRecord& a, const ChargeStateRecord& b, double e_vbm_ev) {
    if (a.q == b.q) throw ValidationError("transition level needs two distinct charge states");
    double num = (a.e_tot_ev + fnv_correction(a)) - (b.e_tot_ev + fnv_correction(b));
    return num / static_cast<double>(b.q - a.q) - e_vbm_ev;
}

namespace {

double interp(const StrainSeries& s, double x) {
    const auto& xs = s.x;
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = std::clamp<std::size_t>(it - xs.begin(), 1, xs.size() - 1);
    std::size_t lo = hi - 1;
    double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return s.y[lo] + t * (s.y[hi] - s.y[lo]);
}

double min_threshold(const ThresholdCurves& c, double x) {
    double m = interp(c.thresholds[0].second, x);
    for (std::size_t i = 1; i < c.thresholds.size(); ++i)
        m = std::min(m, interp(c.thresholds[i].second, x));
    return m;
}

} // namespace

WindowReport photostability_windows(const ThresholdCurves& curves) {
    if (curves.zpl.size() < 2) throw ValidationError("zpl curve needs at least 2 points");
    if (curves.thresholds.empty()) throw ValidationError("at least one threshold curve required");
    for (const auto& [name, s] : curves.thresholds) {
        if (s.size() < 2) throw ValidationError("threshold '" + name + "' needs at least 2 points");
        if (s.axis_kind != curves.zpl.axis_kind)
            throw ValidationError("threshold '" + name + "' uses a different axis kind");
    }

    double lo = curves.zpl.x.front(), hi = curves.zpl.x.back();
    for (const auto& [name, s] : curves.thresholds) {
        lo = std::max(lo, s.x.front());
        hi = std::min(hi, s.x.back());
    }
    if (!(lo < hi)) throw ValidationError("curves have no common axis overlap");

    // breakpoints: every knot of every curve, plus pairwise intersections of
    // the linear pieces, so the sign of (zpl - min threshold) is constant on
    // each elementary interval
    std::set<double> bp{lo, hi};
    auto add_knots = [&](const StrainSeries& s) {
        for (double x : s.x)
            if (x > lo && x < hi) bp.insert(x);
    };
    add_knots(curves.zpl);
    for (const auto& [name, s] : curves.thresholds) add_knots(s);

    std::vector<double> base(bp.begin(), bp.end());
    std::vector<const StrainSeries*> all{&curves.zpl};
    for (const auto& [name, s] : curves.thresholds) all.push_back(&s);
    std::set<double> pts(base.begin(), base.end());
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        double x0 = base[i], x1 = base[i + 1];
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = a + 1; b < all.size(); ++b) {
                double a0 = interp(*all[a], x0), a1 = interp(*all[a], x1);
                double b0 = interp(*all[b], x0), b1 = interp(*all[b], x1);
                double d0 = a0 - b0, d1 = a1 - b1;
                if (d0 * d1 < 0.0) pts.insert(x0 + (x1 - x0) * d0 / (d0 - d1));
            }
    }

    std::vector<double> grid(pts.begin(), pts.end());
    WindowReport rep;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double x0 = grid[i], x1 = grid[i + 1];
        double xm = 0.5 * (x0 + x1);
        bool stable = interp(curves.zpl, xm) < min_threshold(curves, xm);
        if (!rep.windows.empty() && rep.windows.back().photostable == stable) {
            rep.windows.back().to_x = x1;
        } else {
            rep.windows.push_back({x0, x1, stable});
        }
        // boundary between differing-status intervals is a crossing
        double d1 = interp(curves.zpl, x1) - min_threshold(curves, x1);
        if (i + 2 < grid.size()) {
            double xn = 0.5 * (x1 + grid[i + 2]);
            bool stable_next = interp(curves.zpl, xn) < min_threshold(curves, xn);
            if (stable_next != stable && std::abs(d1) < 1e-9) rep.crossings.push_back(x1);
        }
    }
    return rep;
}

} // namespace sivib

// Command-line front end: batch vibronic solves, tunneling, surface fits,
// optical/hyperfine/charge-stability observables and calibration regressions.

#include "sivib/apes.hpp"
#include "sivib/constants.hpp"
#include "sivib/csvio.hpp"
#include "sivib/ctl.hpp"
#include "sivib/errors.hpp"
#include "sivib/observables.hpp"
#include "sivib/schrodinger.hpp"
#include "sivib/spectro.hpp"
#include "sivib/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

using json = nlohmann::ordered_json;

namespace {

struct Globals {
    std::string out;
    std::string format = "json";
    int jobs = 1;
    std::uint64_t seed = 12345;
    int n_max = 60;
    int k = 24;
    double tol = 1e-10;
    bool stamp = false;
};

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(data)));
    return buf;
}

json provenance(const Globals& g, const std::string& command, const json& config,
                const std::vector<std::string>& inputs) {
    json p;
    p["version"] = sivib::version;
    p["command"] = command;
    p["config"] = config;
    json files = json::object();
    for (const auto& f : inputs) files[f] = file_hash(f);
    p["inputs"] = files;
    if (g.stamp) {
        auto now = std::chrono::system_clock::now().time_since_epoch();
        p["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    return p;
}

void emit(const Globals& g, const json& doc) {
    if (g.out.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(g.out);
    if (!out) throw sivib::ValidationError("cannot write output file: " + g.out);
    out << doc.dump(2) << "\n";
}

void emit_text(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out);
    if (!out) throw sivib::ValidationError("cannot write output file: " + g.out);
    out << text;
}

sivib::ParamFormat detect_format(const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
        return sivib::ParamFormat::Toml;
    return sivib::ParamFormat::Csv;
}

json report_to_json(const sivib::VibronicReport& r) {
    json o;
    o["pressure_gpa"] = r.pressure_gpa;
    o["e_jt1_mev"] = r.e_jt1_mev;
    o["e_jt2_mev"] = r.e_jt2_mev;
    o["delta_mev"] = r.delta_mev;
    o["p_u"] = r.p_u;
    o["p_g"] = r.p_g;
    o["p_mean"] = r.p_mean;
    o["delta_so_ghz"] = r.delta_so_ghz;
    if (r.delta_so_direct_ghz) o["delta_so_direct_ghz"] = *r.delta_so_direct_ghz;
    o["ground_symmetry"] = r.ground_symmetry;
    o["n_max"] = r.n_max;
    o["iterations"] = r.iterations;
    o["max_residual"] = r.max_residual;
    o["converged"] = r.converged;
    o["coupling_truncated"] = r.coupling_truncated;
    return o;
}

int run_vibronic(const Globals& g, const std::string& params_path, bool direct) {
    auto pts = sivib::load_param_table(params_path, detect_format(params_path));
    sivib::VibronicOptions opt;
    opt.n_max = g.n_max;
    opt.k = g.k;
    opt.tol = g.tol;
    opt.seed = g.seed;
    opt.direct_so = direct;

    std::vector<json> results(pts.size());
    std::vector<std::string> errors(pts.size());
    std::atomic<std::size_t> next{0};
    int exit_code = 0;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= pts.size()) return;
            try {
                results[i] = report_to_json(sivib::solve_vibronic_point(pts[i], opt));
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    int jobs = std::max(1, g.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    json cfg = {{"n_max", opt.n_max}, {"k", opt.k},      {"tol", opt.tol},
                {"seed", opt.seed},   {"direct", direct}, {"jobs", jobs}};
    json doc;
    doc["meta"] = provenance(g, "vibronic", cfg, {params_path});
    doc["points"] = json::array();
    json errs = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!errors[i].empty()) {
            errs.push_back({{"index", i}, {"error", errors[i]}});
            exit_code = 3;
        } else {
            doc["points"].push_back(results[i]);
        }
    }
    if (!errs.empty()) doc["errors"] = errs;

    if (g.format == "csv") {
        std::string text = "# sivib vibronic v" + std::string(sivib::version) + " config " +
                           cfg.dump() + "\n";
        text += "pressure_gpa,e_jt1_mev,e_jt2_mev,delta_mev,p_u,p_g,p_mean,delta_so_ghz,"
                "ground_symmetry,n_max,converged,coupling_truncated\n";
        for (const auto& r : doc["points"]) {
            auto f = [&](const char* k2) { return sivib::csvio::format_double(r[k2].get<double>()); };
            text += f("pressure_gpa") + "," + f("e_jt1_mev") + "," + f("e_jt2_mev") + "," +
                    f("delta_mev") + "," + f("p_u") + "," + f("p_g") + "," + f("p_mean") + "," +
                    f("delta_so_ghz") + "," + r["ground_symmetry"].get<std::string>() + "," +
                    std::to_string(r["n_max"].get<int>()) + "," +
                    (r["converged"].get<bool>() ? "1" : "0") + "," +
                    (r["coupling_truncated"].get<bool>() ? "1" : "0") + "\n";
        }
        emit_text(g, text);
    } else {
        emit(g, doc);
    }
    return exit_code;
}

int run_tunnel(const Globals& g, const std::vector<std::string>& files, double mass,
               bool richardson) {
    sivib::GridOptions gopt;
    gopt.mass_amu = mass;
    gopt.richardson = richardson;
    json doc;
    json cfg = {{"mass_amu", mass}, {"richardson", richardson}};
    doc["meta"] = provenance(g, "tunnel", cfg, files);
    doc["results"] = json::array();
    int exit_code = 0;
    for (const auto& f : files) {
        json entry;
        entry["file"] = f;
        try {
            auto curve = sivib::PotentialCurve::load_csv(f);
            auto t = sivib::tunneling_splitting(curve, gopt);
            entry["E0_meV"] = t.e0_mev;
            entry["E1_meV"] = t.e1_mev;
            entry["deltaE_meV"] = t.delta_e_mev;
            entry["nu_GHz"] = t.nu_tun_ghz;
            entry["parities"] = {t.parity0 == sivib::Parity::Even ? "even" : "odd",
                                 t.parity1 == sivib::Parity::Even ? "even" : "odd"};
            entry["barrier_meV"] = t.barrier_mev;
            entry["above_barrier"] = t.above_barrier;
            try {
                double w = sivib::wkb_splitting(curve, gopt);
                entry["wkb_deltaE_meV"] = w;
                entry["fd_over_wkb"] = t.delta_e_mev / w;
            } catch (const sivib::ValidationError& e) {
                entry["wkb_error"] = e.what();
            }
        } catch (const std::exception& e) {
            entry["error"] = e.what();
            exit_code = 2;
        }
        doc["results"].push_back(entry);
    }
    emit(g, doc);
    return exit_code;
}

int run_fit_apes(const Globals& g, const std::string& scan_path, double fg, double fu, double hw,
                 double lam, double xi, double quad, bool free_quad) {
    auto scan = sivib::ApesScan::load_csv(scan_path);
    auto init = sivib::PjtParams::make(0.0, fg, fu, hw, lam, xi, 0.0, 0.0, quad);
    sivib::PjtFitSettings settings;
    settings.free[5] = free_quad;
    settings.lm.seed = g.seed;
    auto res = sivib::fit_pjt(scan, init, settings);
    json cfg = {{"init", {fg, fu, hw, lam, xi, quad}}, {"free_quad", free_quad}, {"seed", g.seed}};
    json doc;
    doc["meta"] = provenance(g, "fit-apes", cfg, {scan_path});
    doc["params"] = {{"f_g_mev", res.params.f_g_mev},
                     {"f_u_mev", res.params.f_u_mev},
                     {"hbar_omega_mev", res.params.hbar_omega_mev},
                     {"lambda_mev", res.params.lambda_mev},
                     {"xi_mev", res.params.xi_mev},
                     {"quad_g_mev", res.params.quad_g_mev}};
    doc["uncertainties"] = std::vector<double>(res.fit.uncertainties.data(),
                                               res.fit.uncertainties.data() +
                                                   res.fit.uncertainties.size());
    doc["rms_mev"] = res.fit.rms;
    doc["iterations"] = res.fit.iterations;
    doc["converged"] = res.fit.converged;
    emit(g, doc);
    return res.fit.converged ? 0 : 3;
}

int run_fit_well(const Globals& g, const std::string& scan_path, bool mirror) {
    auto scan = sivib::ApesScan::load_csv(scan_path);
    sivib::FitOptions opt;
    opt.seed = g.seed;
    auto res = sivib::fit_quartic_well(scan, mirror, opt);
    json doc;
    doc["meta"] = provenance(g, "fit-well", {{"mirror_half", mirror}, {"seed", g.seed}},
                             {scan_path});
    doc["barrier_meV"] = res.well.barrier_mev;
    doc["q0_angsqrtamu"] = res.well.q0;
    doc["offset_meV"] = res.well.offset_mev;
    doc["rms_mev"] = res.fit.rms;
    doc["converged"] = res.fit.converged;
    emit(g, doc);
    return res.fit.converged ? 0 : 3;
}

int run_lifetime(const Globals& g, double ezpl, double n, double mu, double ref_tau_ns) {
    auto r = sivib::radiative_rate({ezpl, n, mu});
    json doc;
    doc["meta"] = provenance(g, "lifetime",
                             {{"ezpl_ev", ezpl}, {"n", n}, {"mu_debye", mu}}, {});
    doc["gamma_per_s"] = r.gamma_per_s;
    doc["tau_ns"] = r.tau_ns;
    doc["infinite_lifetime"] = r.infinite_lifetime;
    if (ref_tau_ns > 0.0) {
        double rel = std::abs(r.tau_ns - ref_tau_ns) / ref_tau_ns;
        doc["reference_tau_ns"] = ref_tau_ns;
        doc["reference_relative_deviation"] = rel;
        doc["reference_discrepancy"] = rel > 0.10;
    }
    emit(g, doc);
    return 0;
}

int run_hf(const Globals& g, double apar, double aperp, const std::string& tensor_path,
           const std::string& axis_csv) {
    json doc;
    json cfg = json::object();
    std::vector<std::string> inputs;
    if (!tensor_path.empty()) {
        auto t = sivib::csvio::read_csv(tensor_path, false);
        if (t.rows.size() != 3)
            throw sivib::ValidationError(tensor_path + ": expected 3 rows of 3 values");
        sivib::HyperfineTensor ht;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) ht.a_mhz(i, j) = sivib::csvio::parse_double(t, i, j);
        double ax = 1, ay = 1, az = 1;
        if (std::sscanf(axis_csv.c_str(), "%lf,%lf,%lf", &ax, &ay, &az) != 3)
            throw sivib::ValidationError("axis must be 'x,y,z'");
        ht.axis = Eigen::Vector3d(ax, ay, az).normalized();
        auto p = sivib::hf_principal(ht);
        cfg["tensor"] = tensor_path;
        cfg["axis"] = axis_csv;
        inputs.push_back(tensor_path);
        doc["a_par_mhz"] = p.a_par_mhz;
        doc["a_perp_mhz"] = p.a_perp_mhz;
        doc["theta_deg"] = p.theta_deg;
        doc["isotropic"] = p.isotropic;
        apar = p.a_par_mhz;
        aperp = p.a_perp_mhz;
    }
    cfg["a_par_mhz"] = apar;
    cfg["a_perp_mhz"] = aperp;
    auto levels = sivib::hf_levels(apar, aperp);
    double trace = 0.0;
    for (double e : levels) trace += e;
    doc["levels_mhz"] = levels;
    doc["trace_mhz"] = trace;
    json meta = provenance(g, "hf", cfg, inputs);
    json outdoc;
    outdoc["meta"] = meta;
    for (auto& [k2, v] : doc.items()) outdoc[k2] = v;
    emit(g, outdoc);
    return 0;
}

int run_ctl_windows(const Globals& g, const std::string& zpl_path,
                    const std::vector<std::string>& thresholds) {
    sivib::ThresholdCurves curves;
    curves.zpl = sivib::load_series(zpl_path, "pressure_gpa", "energy_ev",
                                    sivib::AxisKind::PressureGpa);
    for (const auto& t : thresholds)
        curves.thresholds.emplace_back(
            t, sivib::load_series(t, "pressure_gpa", "energy_ev", sivib::AxisKind::PressureGpa));
    auto rep = sivib::photostability_windows(curves);
    std::vector<std::string> inputs{zpl_path};
    inputs.insert(inputs.end(), thresholds.begin(), thresholds.end());
    json doc;
    doc["meta"] = provenance(g, "ctl", {{"zpl", zpl_path}, {"thresholds", thresholds}}, inputs);
    doc["windows"] = json::array();
    for (const auto& w : rep.windows)
        doc["windows"].push_back(
            {{"from_gpa", w.from_x}, {"to_gpa", w.to_x}, {"status", w.photostable ? "photostable" : "unstable"}});
    doc["crossings_gpa"] = rep.crossings;
    emit(g, doc);
    return 0;
}

sivib::ChargeStateRecord parse_record(const std::string& csv) {
    sivib::ChargeStateRecord r;
    double q = 0;
    if (std::sscanf(csv.c_str(), "%lf,%lf,%lf,%lf", &q, &r.e_tot_ev, &r.e_el_ev, &r.delta_v_ev) !=
        4)
        throw sivib::ValidationError("charge record must be 'q,etot_ev,eel_ev,dv_ev', got '" +
                                     csv + "'");
    r.q = static_cast<int>(q);
    return r;
}

int run_ctl_level(const Globals& g, const std::string& a, const std::string& b, double evbm) {
    sivib::ChargeStateRecord ra = parse_record(a);
    sivib::ChargeStateRecord rb = parse_record(b);
    double eps = sivib::transition_level(ra, rb, evbm);
    json doc;
    doc["meta"] = provenance(g, "ctl", {{"record_a", a}, {"record_b", b}, {"e_vbm_ev", evbm}}, {});
    doc["transition_level_ev"] = eps;
    doc["corrections_ev"] = {sivib::fnv_correction(ra), sivib::fnv_correction(rb)};
    emit(g, doc);
    return 0;
}

int run_calibrate(const Globals& g, const std::string& path, const std::string& xcol,
                  const std::string& ycol) {
    auto s = sivib::load_series(path, xcol, ycol, sivib::AxisKind::PressureGpa);
    auto fit = sivib::linear_calibration(s);
    json doc;
    doc["meta"] = provenance(g, "calibrate", {{"series", path}, {"x", xcol}, {"y", ycol}}, {path});
    doc["slope"] = fit.slope;
    doc["intercept"] = fit.intercept;
    doc["r_squared"] = fit.r_squared;
    doc["points"] = s.size();
    emit(g, doc);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-vibronic and optical toolkit for the neutral silicon-vacancy center"};
    app.require_subcommand(1);

    Globals g;
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--jobs", g.jobs, "parallel points for batch runs");
    app.add_option("--seed", g.seed, "eigensolver / fit start seed");
    app.add_option("--n-max", g.n_max, "boson truncation n_x + n_y <= n_max");
    app.add_option("--k", g.k, "eigenpairs per diagonalization");
    app.add_option("--tol", g.tol, "relative residual tolerance");
    app.add_flag("--stamp", g.stamp, "include a timestamp in the output header");
    app.fallthrough();

    std::string params_path, scan_path, zpl_path, tensor_path;
    std::vector<std::string> potential_files, threshold_files;
    bool direct = false, mirror = false, free_quad = false, no_richardson = false;
    double mass = 1.0;
    double fg = 0, fu = 0, hw = 0, lam = 0, xi = 0, quad = 0;
    double ezpl = 0, nrefr = 0, mu = 0, ref_tau = 0;
    double apar = 0, aperp = 0, evbm = 0;
    std::string axis_csv = "1,1,1", xcol = "pressure_gpa", ycol = "energy_ev";
    std::string rec_a, rec_b;

    auto* vib = app.add_subcommand("vibronic", "batch vibronic reports per strain point");
    vib->add_option("--params", params_path, "parameter table (csv or toml)")->required();
    vib->add_flag("--direct", direct, "also compute the direct spin-orbit splitting");

    auto* tun = app.add_subcommand("tunnel", "double-well tunneling from sampled potentials");
    tun->add_option("--potential", potential_files, "potential csv (repeatable)")->required();
    tun->add_option("--mass", mass, "effective mass in amu (default 1)");
    tun->add_flag("--no-richardson", no_richardson, "disable two-grid refinement");

    auto* fap = app.add_subcommand("fit-apes", "fit vibronic model parameters to a surface scan");
    fap->add_option("--scan", scan_path, "scan csv")->required();
    fap->add_option("--init-f-g", fg)->required();
    fap->add_option("--init-f-u", fu)->required();
    fap->add_option("--init-hw", hw)->required();
    fap->add_option("--init-lambda", lam)->required();
    fap->add_option("--init-xi", xi)->required();
    fap->add_option("--init-quad", quad);
    fap->add_flag("--free-quad", free_quad, "also fit the quadratic coupling");

    auto* fwl = app.add_subcommand("fit-well", "fit a symmetric quartic double well");
    fwl->add_option("--scan", scan_path, "single-branch scan csv")->required();
    fwl->add_flag("--mirror-half", mirror, "mirror a half scan about q = 0");

    auto* lt = app.add_subcommand("lifetime", "radiative rate and lifetime");
    lt->add_option("--ezpl", ezpl, "transition energy (eV)")->required();
    lt->add_option("--n", nrefr, "refractive index")->required();
    lt->add_option("--mu", mu, "transition dipole (Debye)")->required();
    lt->add_option("--reference-tau-ns", ref_tau, "flag deviations from a reference lifetime");

    auto* hf = app.add_subcommand("hf", "hyperfine levels and principal analysis");
    hf->add_option("--apar", apar, "axial coupling (MHz)");
    hf->add_option("--aperp", aperp, "transverse coupling (MHz)");
    hf->add_option("--tensor", tensor_path, "3x3 tensor csv (headerless)");
    hf->add_option("--axis", axis_csv, "defect axis, default 1,1,1");

    auto* ctl = app.add_subcommand("ctl", "charge transition levels and photostability windows");
    ctl->add_option("--zpl", zpl_path, "zpl curve csv (pressure_gpa,energy_ev)");
    ctl->add_option("--threshold", threshold_files, "threshold curve csv (repeatable)");
    ctl->add_option("--record-a", rec_a, "charge record: q,etot_ev,eel_ev,dv_ev");
    ctl->add_option("--record-b", rec_b, "charge record: q,etot_ev,eel_ev,dv_ev");
    ctl->add_option("--evbm", evbm, "valence band maximum (eV)");

    auto* cal = app.add_subcommand("calibrate", "ordinary least squares over a series");
    cal->add_option("--series", params_path, "series csv")->required();
    cal->add_option("--x-col", xcol, "x column name");
    cal->add_option("--y-col", ycol, "y column name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (vib->parsed()) return run_vibronic(g, params_path, direct);
        if (tun->parsed()) return run_tunnel(g, potential_files, mass, !no_richardson);
        if (fap->parsed())
            return run_fit_apes(g, scan_path, fg, fu, hw, lam, xi, quad, free_quad);
        if (fwl->parsed()) return run_fit_well(g, scan_path, mirror);
        if (lt->parsed()) return run_lifetime(g, ezpl, nrefr, mu, ref_tau);
        if (hf->parsed()) return run_hf(g, apar, aperp, tensor_path, axis_csv);
        if (ctl->parsed()) {
            if (!zpl_path.empty()) return run_ctl_windows(g, zpl_path, threshold_files);
            if (!rec_a.empty() && !rec_b.empty()) return run_ctl_level(g, rec_a, rec_b, evbm);
            throw sivib::ValidationError(
                "ctl needs either --zpl/--threshold curves or --record-a/--record-b/--evbm");
        }
        if (cal->parsed()) return run_calibrate(g, params_path, xcol, ycol);
    } catch (const sivib::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sivib::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

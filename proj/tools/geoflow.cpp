#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "geoflow/geoflow.hpp"

using namespace geoflow;
using cli::json;
using cli::Run;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

json point_json(const Point& p, int dim = 3) {
    return dim == 2 ? json::array({p.x(), p.y()}) : json::array({p.x(), p.y(), p.z()});
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

// ---- csf ------------------------------------------------------------------

struct CsfEvolveArgs {
    std::string input;
    std::optional<double> stop_time, stop_length, dt;
    double cfl = 0.25;
    std::size_t n = 0, record_every = 10, resample_every = 10;
    std::optional<std::string> huisken;  // "x,y,t0"
    bool distance_ratio = false, rescale = false;
    std::string lambdas = "2,4,8";
};

void csf_evolve(Run& run, const CsfEvolveArgs& a) {
    const SampledCurve c = io::read_curve(a.input);
    csf::StepOptions o;
    o.cfl = a.cfl;
    o.dt = a.dt.value_or(0.0);
    o.n_points = a.n;
    o.record_every = a.record_every;
    o.resample_every = a.resample_every;
    o.stop_time = a.stop_time.value_or(inf);
    o.stop_length = a.stop_length.value_or(0.0);
    o.distance_ratio = a.distance_ratio;
    if (a.huisken) {
        const auto v = cli::parse_list(*a.huisken);
        if (v.size() != 3) throw Error("invalid-argument", "--huisken takes x,y,t0");
        o.huisken = csf::KernelCenter{Point(v[0], v[1], 0.0), v[2]};
    }
    o.validate();
    const FlowTrajectory traj = csf::evolve(c, o);
    run.add(io::write_trajectory(run.dir(), "csf", traj, run.format()));
    run.write_table("diagnostics.csv", io::planar_diagnostics(traj));
    run.summary() = {{"stop_reason", traj.stop_reason}, {"final_time", traj.final_time()}, {"steps", traj.steps},
                     {"frames", traj.size()}};

    if (a.rescale) {
        const double T = csf::estimate_singular_time(traj);
        const Point x0 = csf::estimate_shrink_point(traj);
        const auto rep = csf::parabolic_rescale(traj, x0, T, cli::parse_list(a.lambdas));
        json runs = json::array();
        for (const auto& r : rep.runs) {
            char stem[32];
            std::snprintf(stem, sizeof stem, "rescaled_l%g", r.lambda);
            if (r.frames.size() > 0) run.add(io::write_trajectory(run.dir(), stem, r.frames, run.format()));
            runs.push_back({{"lambda", r.lambda},
                            {"frames", r.frames.size()},
                            {"isoperimetric_ratio_at_half", r.ratio_at_half ? json(*r.ratio_at_half) : json(nullptr)},
                            {"rescaled_time_at_half", r.time_at_half ? json(*r.time_at_half) : json(nullptr)},
                            {"centroid_drift", r.centroid_drift},
                            {"off_center", r.off_center}});
        }
        run.write_json("isoperimetric_report.json",
                       {{"singular_time", T}, {"shrink_point", point_json(x0, 2)}, {"runs", runs}, {"notices", rep.notices}});
        run.summary()["singular_time"] = T;
    }
    std::cout << "stop_reason " << traj.stop_reason << "\nfinal_time " << traj.final_time() << "\n";
}

struct CsfSolitonArgs {
    double A = 0.0, B = -1.0, x0 = 1.0, y0 = 0.0, theta0 = 0.0;
    std::string s = "-5:5:512";
    bool grim_reaper = false, sweep = false, partner = false;
    double t = 0.0;
    std::string x = "-1.5:1.5:257";
    std::string x0_range = "0.1:1:10";
    double r_min = 0.5;
    int max_q = 40;
};

json soliton_member(Run& run, const CsfSolitonArgs& a, double x0, const std::string& stem) {
    const auto grid = cli::parse_range(a.s);
    if (grid.size() < 2) throw Error("invalid-argument", "--s needs at least two samples");
    csf::SolitonSpec spec;
    spec.A = a.A;
    spec.B = a.B;
    spec.x0 = x0;
    spec.y0 = a.y0;
    spec.theta0 = a.theta0;
    spec.s_min = grid.front();
    spec.s_max = grid.back();
    spec.n = grid.size();
    spec.validate();
    const auto profile = csf::integrate_profile(spec);
    const SampledCurve curve = csf::reconstruct_curve(profile, a.A, a.B);
    run.write_curve(stem, curve);
    json rec{{"A", a.A},
             {"B", a.B},
             {"x0", x0},
             {"y0", a.y0},
             {"class", csf::to_string(csf::classify(a.A, a.B))},
             {"s_range", json::array({profile.s.front(), profile.s.back()})},
             {"escaped", profile.escaped},
             {"max_residual", max_of(csf::soliton_residual(curve, a.A, a.B))},
             {"curve", run.named(stem)}};
    if (a.A == 0.0 && a.B < 0.0 && x0 > 0.0) {
        const auto cl = csf::detect_closure(a.B, x0, a.max_q);
        rec["closure"] = {{"angle_advance", cl.angle_advance}, {"r_min", cl.r_min}, {"r_max", cl.r_max},
                          {"p", cl.pq ? json(cl.pq->first) : json(nullptr)},
                          {"q", cl.pq ? json(cl.pq->second) : json(nullptr)}};
    }
    return rec;
}

void csf_soliton(Run& run, const CsfSolitonArgs& a) {
    if (a.grim_reaper + a.sweep + a.partner > 1) throw Error("invalid-argument", "choose one of --grim-reaper, --sweep, --partner");
    if (a.grim_reaper) {
        run.write_curve("grim_reaper", csf::grim_reaper(a.t, cli::parse_range(a.x)));
        run.summary() = {{"class", "translating"}, {"t", a.t}};
    } else if (a.partner) {
        const double r_max = csf::abresch_langer_partner(a.B, a.r_min);
        run.summary() = {{"B", a.B}, {"r_min", a.r_min}, {"r_max", r_max}};
        run.write_json("partner.json", run.summary());
        std::cout << "r_max " << io::format_number(r_max) << "\n";
    } else if (a.sweep) {
        json members = json::array();
        std::size_t k = 0;
        for (double x0 : cli::parse_range(a.x0_range)) {
            char stem[32];
            std::snprintf(stem, sizeof stem, "member_%04zu", k++);
            members.push_back(soliton_member(run, a, x0, stem));
        }
        run.write_json("atlas.json", {{"members", members}});
        run.summary() = {{"members", members.size()}};
    } else {
        run.summary() = soliton_member(run, a, a.x0, "soliton");
        std::cout << "class " << run.summary()["class"].get<std::string>() << "\n";
    }
}

// ---- vfe ------------------------------------------------------------------

struct VfeEvolveArgs {
    std::string input;
    double stop_time = 0.0;
    std::optional<double> dt;
    double cfl = 0.1;
    std::size_t record_every = 10;
    std::size_t trim = 4;
};

io::Table residual_table(const std::vector<vfe::FrenetResidual>& rs) {
    io::Table t{{"time", "res_kappa", "res_tau", "res_N", "res_B", "skipped"}, {}};
    for (const auto& r : rs) {
        if (r.skipped) {
            t.rows.push_back({r.time, std::nullopt, std::nullopt, std::nullopt, std::nullopt, 1.0});
        } else {
            t.rows.push_back({r.time, r.res_kappa, r.res_tau, r.res_N, r.res_B, 0.0});
        }
    }
    return t;
}

void vfe_evolve(Run& run, const VfeEvolveArgs& a) {
    const SampledCurve c = io::read_curve(a.input);
    vfe::StepOptions o;
    o.stop_time = a.stop_time;
    o.dt = a.dt.value_or(0.0);
    o.cfl = a.cfl;
    o.record_every = a.record_every;
    o.validate();
    const FlowTrajectory traj = vfe::evolve(c, o);
    run.add(io::write_trajectory(run.dir(), "vfe", traj, run.format()));
    run.write_table("diagnostics.csv", io::spatial_diagnostics(traj));
    run.summary() = {{"stop_reason", traj.stop_reason}, {"final_time", traj.final_time()}, {"steps", traj.steps},
                     {"frames", traj.size()}};
    if (traj.size() >= 3) {
        vfe::ResidualOptions ro;
        ro.trim = a.trim;
        const auto rs = vfe::frenet_evolution_residuals(traj, ro);
        run.write_table("frenet_residuals.csv", residual_table(rs));
        double k = 0, t = 0;
        for (const auto& r : rs)
            if (!r.skipped) {
                k = std::max(k, r.res_kappa);
                t = std::max(t, r.res_tau);
            }
        run.summary()["max_res_kappa"] = k;
        run.summary()["max_res_tau"] = t;
    } else {
        run.summary()["notice"] = "fewer than three frames; Frenet residuals skipped";
    }
    std::cout << "stop_reason " << traj.stop_reason << "\nfinal_time " << traj.final_time() << "\n";
}

struct VfeSolitonArgs {
    std::string kind = "planar";
    double C1 = 0.0, C2 = 0.0, lambda = 0.0;
    std::optional<double> z0, f0;
    int sign = 1;
    std::string x = "-1:1:1024";
    bool swap_yz = false;
    double flow_check = 0.0;
};

void vfe_soliton(Run& run, const VfeSolitonArgs& a) {
    vfe::VfeRotatingSpec spec;
    if (a.kind == "transverse") {
        spec.kind = vfe::RotationCase::transverse;
    } else if (a.kind == "x-axis") {
        spec.kind = vfe::RotationCase::x_axis;
    } else if (a.kind == "planar") {
        spec.kind = vfe::RotationCase::planar;
    } else {
        throw Error("invalid-argument", "--case must be transverse, x-axis or planar");
    }
    if (a.z0 && a.f0) throw Error("invalid-argument", "give --z0 or --f0, not both");
    const auto xs = cli::parse_range(a.x);
    spec.C1 = a.C1;
    spec.C2 = a.C2;
    spec.lambda = a.lambda;
    spec.sign = a.sign;
    spec.z0 = a.z0.value_or(a.f0.value_or(0.0));
    spec.x_range = {xs.front(), xs.back()};
    spec.n = xs.size();
    spec.swap_yz = a.swap_yz;
    const vfe::RotatingProfile p = vfe::rotating_profile(spec);
    run.write_curve("profile", p.curve);
    const ScalarField r = vfe::rotation_residual(p.curve, p.omega);
    io::Table t{{"x", "z", "dz", "residual"}, {}};
    for (std::size_t k = 0; k < p.size(); ++k) t.rows.push_back({p.x[k], p.z[k], p.dz[k], r[k]});
    run.write_table("rotation_residual.csv", t);
    run.summary() = {{"case", vfe::to_string(p.kind)},
                     {"lambda", a.lambda},
                     {"C1", a.C1},
                     {"C2", a.C2},
                     {"omega", point_json(p.omega)},
                     {"initial_sign", a.sign},
                     {"turning_points", p.turning_points},
                     {"ode_defect", p.defect},
                     {"max_rotation_residual", max_of(r)},
                     {"flags", p.flags}};
    if (spec.kind != vfe::RotationCase::transverse)
        run.summary()["admissible_band_z2"] = json::array({p.band.first, p.band.second});
    if (a.flow_check > 0.0) {
        vfe::StepOptions o;
        o.stop_time = a.flow_check;
        o.record_every = std::numeric_limits<std::size_t>::max();
        const SampledCurve moved = vfe::evolve(p.curve, o).final_curve();
        run.summary()["flow_check_hausdorff"] =
            hausdorff_distance(moved, vfe::rigid_rotation(p.curve, p.omega, a.flow_check));
    }
    run.write_json("rotation_law.json", run.summary());
    std::cout << "omega " << p.omega.x() << "," << p.omega.y() << "," << p.omega.z() << "\nmax_residual "
              << max_of(r) << "\n";
}

struct BiotSavartArgs {
    std::string input;
    std::string eps = "1e-2,1e-3,1e-4";
    std::size_t index = 0;
    double outer = 1.0;
    std::size_t quadrature_n = 32;
};

void vfe_biot_savart(Run& run, const BiotSavartArgs& a) {
    const SampledCurve c = io::read_curve(a.input);
    if (c.dimension() != 3) throw Error("invalid-argument", "Biot-Savart needs a 3-D curve");
    if (a.index >= c.size()) throw Error("invalid-argument", "--index out of range");
    const auto eps = cli::parse_list(a.eps);
    if (eps.size() < 2) throw Error("invalid-argument", "need at least two --eps values for the fit");
    io::Table t{{"epsilon", "log_inv_epsilon", "speed", "vx", "vy", "vz"}, {}};
    std::vector<double> X, Y;
    for (double e : eps) {
        vfe::BiotSavartOptions o;
        o.epsilon = e;
        o.outer = a.outer;
        o.quadrature_n = a.quadrature_n;
        o.validate();
        const Point v = vfe::biot_savart_velocity(c, a.index, o);
        X.push_back(std::log(1.0 / e));
        Y.push_back(v.norm());
        t.rows.push_back({e, X.back(), Y.back(), v.x(), v.y(), v.z()});
    }
    run.write_table("biot_savart.csv", t);
    const double n = static_cast<double>(X.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < X.size(); ++k) {
        mx += X[k] / n;
        my += Y[k] / n;
    }
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t k = 0; k < X.size(); ++k) {
        sxx += (X[k] - mx) * (X[k] - mx);
        sxy += (X[k] - mx) * (Y[k] - my);
        syy += (Y[k] - my) * (Y[k] - my);
    }
    const double slope = sxy / sxx;
    const double r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    run.summary() = {{"slope", slope}, {"intercept", my - slope * mx}, {"r_squared", r2}, {"index", a.index}};
    run.write_json("biot_savart_fit.json", run.summary());
    std::cout << "slope " << slope << "\nr_squared " << r2 << "\n";
}

// ---- hasimoto -------------------------------------------------------------

json frames_json(const FrenetData& f) {
    json j = json::object();
    json T = json::array(), N = json::array(), B = json::array();
    for (std::size_t k = 0; k < f.size(); ++k) {
        T.push_back(point_json(f.tangent[k]));
        N.push_back(point_json(f.normal[k]));
        B.push_back(point_json(f.binormal[k]));
    }
    j["s"] = f.arclength;
    j["tangent"] = std::move(T);
    j["normal"] = std::move(N);
    j["binormal"] = std::move(B);
    j["curvature"] = f.curvature;
    j["torsion"] = f.torsion;
    return j;
}

struct TransformArgs {
    std::string input;
    std::optional<bool> periodic;
};

void hasimoto_transform_cmd(Run& run, const TransformArgs& a) {
    const SampledCurve c = io::read_curve(a.input);
    const auto psi = hasimoto::hasimoto_transform(frenet(c), {}, a.periodic.value_or(c.closed()));
    run.write_filament("filament", psi);
    double kmax = 0;
    for (const auto& v : psi.values) kmax = std::max(kmax, std::abs(v));
    run.summary() = {{"samples", psi.size()}, {"grid_step", psi.grid_step}, {"max_abs_psi", kmax}};
}

struct NlcseArgs {
    std::string input;
    double dt = 1e-3;
    std::size_t steps = 1000;
    std::optional<double> gauge_A;
    std::size_t record_every = 0;
};

void hasimoto_evolve_cmd(Run& run, const NlcseArgs& a) {
    auto psi = io::read_filament(a.input);
    if (a.gauge_A) psi.gauge_A = *a.gauge_A;
    io::Table mass{{"time", "mass"}, {{psi.time, hasimoto::mass(psi)}}};
    const double m0 = hasimoto::mass(psi);
    std::size_t frame = 0;
    for (std::size_t k = 1; k <= a.steps; ++k) {
        psi = hasimoto::nlcse_step(std::move(psi), a.dt);
        if (a.record_every && k % a.record_every == 0 && k != a.steps) {
            char stem[32];
            std::snprintf(stem, sizeof stem, "filament_%05zu", frame++);
            run.write_filament(stem, psi);
            mass.rows.push_back({psi.time, hasimoto::mass(psi)});
        }
    }
    mass.rows.push_back({psi.time, hasimoto::mass(psi)});
    run.write_filament("filament_final", psi);
    run.write_table("mass.csv", mass);
    run.summary() = {{"final_time", psi.time}, {"mass_change", hasimoto::mass(psi) - m0}, {"flags", psi.flags}};
}

struct ReconstructArgs {
    std::string input;
    std::string T = "1,0,0", re_N = "0,1,0", im_N = "0,0,1", origin = "0,0,0";
};

void hasimoto_reconstruct_cmd(Run& run, const ReconstructArgs& a) {
    const auto psi = io::read_filament(a.input);
    hasimoto::FrameState seed;
    seed.T = cli::parse_point(a.T);
    seed.N = cli::parse_point(a.re_N).cast<hasimoto::Complex>() +
             hasimoto::Complex(0, 1) * cli::parse_point(a.im_N).cast<hasimoto::Complex>();
    seed.position = cli::parse_point(a.origin);
    const auto r = hasimoto::reconstruct_frame(psi, seed);
    run.write_curve("reconstruction", r.curve);
    double defect = 0;
    for (const auto& f : r.frames) defect = std::max(defect, f.defect());
    run.summary() = {{"samples", r.curve.size()}, {"max_frame_defect", defect}};
}

struct HSolitonArgs {
    double nu = 1.0, tau0 = 0.0, t = 0.0;
    std::string s = "-20:20:1025";
};

void hasimoto_soliton_cmd(Run& run, const HSolitonArgs& a) {
    hasimoto::HasimotoSolitonSpec spec;
    spec.nu = a.nu;
    spec.tau0 = a.tau0;
    const auto s = cli::parse_range(a.s);
    const auto sf = hasimoto::hasimoto_soliton(spec, a.t, s);
    run.write_curve("soliton", sf.curve);
    run.write_json("soliton_frames.json", frames_json(sf.frenet));
    double worst = 0, kmax = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        worst = std::max(worst, (sf.frenet.binormal[k] - sf.frenet.tangent[k].cross(sf.frenet.normal[k])).norm());
        kmax = std::max(kmax, sf.frenet.curvature[k]);
    }
    run.summary() = {{"mu", spec.mu()},         {"speed", spec.speed()},    {"gauge_A", spec.gauge_A()},
                     {"max_curvature", kmax}, {"max_binormal_defect", worst}};
}

struct DilatingArgs {
    double a = 1.0, t = 1.0;
    std::string x = "-10:10:4096";
    bool check_residual = false;
    double delta = 1e-3;
};

void hasimoto_dilating_cmd(Run& run, const DilatingArgs& d) {
    const auto x = cli::parse_range(d.x);
    const auto psi = hasimoto::dilating_filament(d.a, d.t, x);
    run.write_filament("dilating", psi);
    const auto [c, tau0] = hasimoto::dilating_curvature_torsion(d.a, d.t, 0.0);
    run.summary() = {{"curvature", c}, {"gauge_A", psi.gauge_A}, {"torsion_at_origin", tau0}};
    if (d.check_residual) {
        if (!(d.t - 2 * d.delta > 0.0)) throw Error("at-singularity", "residual stencil reaches t <= 0");
        std::array<hasimoto::FilamentFunction, 5> f;
        for (int j = 0; j < 5; ++j) f[j] = hasimoto::dilating_filament(d.a, d.t + (j - 2) * d.delta, x);
        const double r = max_of(hasimoto::nlcse_residual(f, d.delta));
        run.summary()["nlcse_residual"] = r;
        std::cout << "nlcse_residual " << r << "\n";
    }
}

// ---- diagnose -------------------------------------------------------------

struct DiagnoseArgs {
    std::string input;
    std::string center = "0,0";
    double t0 = 0.0;
    std::string flow = "auto";
    std::size_t trim = 4;
};

void diagnose_huisken(Run& run, const DiagnoseArgs& a) {
    const FlowTrajectory traj = io::read_trajectory(a.input);
    const Point x0 = cli::parse_point(a.center);
    io::Table t{{"time", "huisken"}, {}};
    bool monotone = true;
    double prev = inf;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double v = csf::huisken_functional(traj.curves[i], traj.times[i], x0, a.t0);
        t.rows.push_back({traj.times[i], v});
        monotone = monotone && v <= prev + 1e-6 * std::abs(prev);
        prev = v;
    }
    run.write_table("huisken.csv", t);
    run.summary() = {{"frames", traj.size()}, {"non_increasing", monotone}};
}

void diagnose_distance_ratio(Run& run, const DiagnoseArgs& a) {
    const FlowTrajectory traj = io::read_trajectory(a.input);
    io::Table t{{"time", "distance_ratio"}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i) t.rows.push_back({traj.times[i], csf::distance_ratio(traj.curves[i])});
    run.write_table("distance_ratio.csv", t);
    run.summary() = {{"frames", traj.size()}};
}

void diagnose_residuals(Run& run, const DiagnoseArgs& a) {
    FlowTrajectory traj = io::read_trajectory(a.input);
    if (traj.size() < 3) throw Error("invalid-argument", "need at least three frames");
    std::string flow = a.flow;
    if (flow == "auto") flow = traj.curves.front().dimension() == 3 ? "vfe" : "csf";
    if (flow == "csf") {
        for (std::size_t i = 0; i < traj.size(); ++i) traj.diagnostics[i].length = total_length(traj.curves[i]);
        const auto rate = csf::arclength_rate_residual(traj);
        const auto kap = csf::curvature_evolution_residual(traj);
        io::Table t{{"time", "arclength_rate", "curvature_law"}, {}};
        for (std::size_t i = 0; i + 2 < traj.size(); ++i) t.rows.push_back({traj.times[i + 1], rate[i], kap[i]});
        run.write_table("csf_residuals.csv", t);
        run.summary() = {{"flow", "csf"}, {"max_arclength_rate", max_of(rate)}, {"max_curvature_law", max_of(kap)}};
    } else if (flow == "vfe") {
        vfe::ResidualOptions ro;
        ro.trim = a.trim;
        const auto rs = vfe::frenet_evolution_residuals(traj, ro);
        run.write_table("frenet_residuals.csv", residual_table(rs));
        run.summary() = {{"flow", "vfe"}, {"frames", rs.size()}};
    } else {
        throw Error("invalid-argument", "--flow must be csf, vfe or auto");
    }
}

// ---- shapes ---------------------------------------------------------------

struct ShapeArgs {
    std::string kind = "circle";
    double a = 1.0, b = 1.0;
    std::size_t n = 256;
    int dimension = 2;
    double u0 = -2 * std::numbers::pi, u1 = 2 * std::numbers::pi;
};

void shape_cmd(Run& run, const ShapeArgs& s) {
    if (s.dimension != 2 && s.dimension != 3) throw Error("invalid-argument", "--dimension must be 2 or 3");
    SampledCurve c;
    if (s.kind == "circle") {
        c = shapes::circle(s.a, s.n, Point::Zero(), s.dimension);
    } else if (s.kind == "ellipse") {
        c = shapes::ellipse(s.a, s.b, s.n, s.dimension);
    } else if (s.kind == "helix") {
        c = shapes::helix(s.a, s.b, s.u0, s.u1, s.n);
    } else {
        throw Error("invalid-argument", "--kind must be circle, ellipse or helix");
    }
    run.write_curve(s.kind, c);
    run.summary() = {{"samples", c.size()}, {"length", total_length(c)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curve-shortening and vortex-filament flows, self-similar solutions, Hasimoto transform."};
    app.require_subcommand(1);
    app.fallthrough();
    cli::Globals g;
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_flag("--force", g.force, "append to an existing output directory");
    app.add_option("--threads", g.threads, "worker threads (computations are sequential)")->capture_default_str();
    app.add_option("--format", g.format, "csv or structured-text")->capture_default_str();

    std::vector<std::pair<CLI::App*, std::function<void(Run&)>>> leaves;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        return sub;
    };

    // csf
    CLI::App* csf = app.add_subcommand("csf", "curve-shortening flow")->require_subcommand(1);
    CsfEvolveArgs ce;
    {
        auto* s = leaf(csf, "evolve", "evolve a closed planar curve");
        s->add_option("--input", ce.input, "curve file")->required();
        s->add_option("--stop-time", ce.stop_time);
        s->add_option("--stop-length", ce.stop_length);
        s->add_option("--dt", ce.dt, "fixed step (default: CFL)");
        s->add_option("--cfl", ce.cfl)->capture_default_str();
        s->add_option("--n", ce.n, "resample to n points (0 keeps input)")->capture_default_str();
        s->add_option("--record-every", ce.record_every)->capture_default_str();
        s->add_option("--resample-every", ce.resample_every)->capture_default_str();
        s->add_option("--huisken", ce.huisken, "kernel centre x,y,t0");
        s->add_flag("--distance-ratio", ce.distance_ratio);
        s->add_flag("--rescale", ce.rescale, "parabolic blow-up around the singularity");
        s->add_option("--lambdas", ce.lambdas)->capture_default_str();
        leaves.emplace_back(s, [&](Run& r) { csf_evolve(r, ce); });
    }
    CsfSolitonArgs cs;
    {
        auto* s = leaf(csf, "soliton", "self-similar solutions");
        s->add_option("--A", cs.A)->capture_default_str();
        s->add_option("--B", cs.B)->capture_default_str();
        s->add_option("--x0", cs.x0)->capture_default_str();
        s->add_option("--y0", cs.y0)->capture_default_str();
        s->add_option("--theta0", cs.theta0)->capture_default_str();
        s->add_option("--s", cs.s, "arclength grid start:end:count")->capture_default_str();
        s->add_flag("--grim-reaper", cs.grim_reaper);
        s->add_option("--t", cs.t)->capture_default_str();
        s->add_option("--x", cs.x, "grim reaper grid")->capture_default_str();
        s->add_flag("--sweep", cs.sweep);
        s->add_option("--x0-range", cs.x0_range)->capture_default_str();
        s->add_flag("--partner", cs.partner, "outer radius partner of --r-min");
        s->add_option("--r-min", cs.r_min)->capture_default_str();
        s->add_option("--max-q", cs.max_q)->capture_default_str();
        leaves.emplace_back(s, [&](Run& r) { csf_soliton(r, cs); });
    }

    // vfe
    CLI::App* vfe = app.add_subcommand("vfe", "vortex filament equation")->require_subcommand(1);
    VfeEvolveArgs ve;
    {
        auto* s = leaf(vfe, "evolve", "binormal flow of a space curve");
        s->add_option("--input", ve.input)->required();
        s->add_option("--stop-time", ve.stop_time)->required();
        s->add_option("--dt", ve.dt);
        s->add_option("--cfl", ve.cfl)->capture_default_str();
        s->add_option("--record-every", ve.record_every)->capture_default_str();
        s->add_option("--trim", ve.trim, "samples skipped at open ends in residuals")->capture_default_str();
        leaves.emplace_back(s, [&](Run& r) { vfe_evolve(r, ve); });
    }
    VfeSolitonArgs vs;
    {
        auto* s = leaf(vfe, "soliton", "rigidly rotating profiles");
        s->add_option("--case", vs.kind, "transverse, x-axis or planar")->capture_default_str();
        s->add_option("--C1", vs.C1)->capture_default_str();
        s->add_option("--C2", vs.C2)->capture_default_str();
        s->add_option("--lambda", vs.lambda)->capture_default_str();
        s->add_option("--z0", vs.z0);
        s->add_option("--f0", vs.f0);
        s->add_option("--sign", vs.sign)->capture_default_str();
        s->add_option("--x", vs.x, "start:end:count")->capture_default_str();
        s->add_flag("--swap-yz", vs.swap_yz);
        s->add_option("--flow-check", vs.flow_check, "evolve for this time and compare with the rotation");
        leaves.emplace_back(s, [&](Run& r) { vfe_soliton(r, vs); });
    }
    BiotSavartArgs bs;
    {
        auto* s = leaf(vfe, "biot-savart", "cut-off Biot-Savart velocity");
        s->add_option("--input", bs.input)->required();
        s->add_option("--eps", bs.eps)->capture_default_str();
        s->add_option("--index", bs.index)->capture_default_str();
        s->add_option("--outer", bs.outer)->capture_default_str();
        s->add_option("--quadrature-n", bs.quadrature_n)->capture_default_str();
        leaves.emplace_back(s, [&](Run& r) { vfe_biot_savart(r, bs); });
    }

    // hasimoto
    CLI::App* has = app.add_subcommand("hasimoto", "filament function")->require_subcommand(1);
    TransformArgs ht;
    {
        auto* s = leaf(has, "transform", "curve to filament function");
        s->add_option("--input", ht.input)->required();
        s->add_option("--periodic", ht.periodic, "default: the curve is closed");
        leaves.emplace_back(s, [&](Run& r) { hasimoto_transform_cmd(r, ht); });
    }
    NlcseArgs hn;
    {
        auto* s = leaf(has, "evolve", "split-step NLCSE");
        s->add_option("--input", hn.input)->required();
        s->add_option("--dt", hn.dt)->capture_default_str();
        s->add_option("--steps", hn.steps)->capture_default_str();
        s->add_option("--gauge-A", hn.gauge_A);
        s->add_option("--record-every", hn.record_every)->capture_default_str();
        leaves.emplace_back(s, [&](Run& r) { hasimoto_evolve_cmd(r, hn); });
    }
    ReconstructArgs hr;
    {
        auto* s = leaf(has, "reconstruct", "filament function to curve");
        s->add_option("--input", hr.input)->required();
        s->add_option("--T", hr.T)->capture_default_str();
        s->add_option("--re-N", hr.re_N)->capture_default_str();
        s->add_option("--im-N", hr.im_N)->capture_default_str();
        s->add_option("--origin", hr.origin)->capture_default_str();
        leaves.emplace_back(s, [&](Run& r) { hasimoto_reconstruct_cmd(r, hr); });
    }
    HSolitonArgs hs;
    {
        auto* s = leaf(has, "soliton", "travelling kink solution");
        s->add_option("--nu", hs.nu)->capture_default_str();
        s->add_option("--tau0", hs.tau0)->capture_default_str();
        s->add_option("--t", hs.t)->capture_default_str();
        s->add_option("--s", hs.s)->capture_default_str();
        leaves.emplace_back(s, [&](Run& r) { hasimoto_soliton_cmd(r, hs); });
    }
    DilatingArgs hd;
    {
        auto* s = leaf(has, "dilating", "self-similar dilating family");
        s->add_option("--a", hd.a)->capture_default_str();
        s->add_option("--t", hd.t)->capture_default_str();
        s->add_option("--x", hd.x)->capture_default_str();
        s->add_flag("--check-residual", hd.check_residual);
        s->add_option("--delta", hd.delta, "time spacing of the residual stencil")->capture_default_str();
        leaves.emplace_back(s, [&](Run& r) { hasimoto_dilating_cmd(r, hd); });
    }

    // diagnose
    CLI::App* dia = app.add_subcommand("diagnose", "diagnostics of a stored trajectory")->require_subcommand(1);
    DiagnoseArgs da;
    auto diag_leaf = [&](const std::string& name, const std::string& help, void (*fn)(Run&, const DiagnoseArgs&)) {
        auto* s = leaf(dia, name, help);
        s->add_option("--input", da.input, "trajectory index file")->required();
        leaves.emplace_back(s, [&da, fn](Run& r) { fn(r, da); });
        return s;
    };
    {
        auto* s = diag_leaf("huisken", "Huisken functional per frame", diagnose_huisken);
        s->add_option("--center", da.center)->capture_default_str();
        s->add_option("--t0", da.t0)->capture_default_str();
    }
    diag_leaf("distance-ratio", "distance ratio per frame", diagnose_distance_ratio);
    {
        auto* s = diag_leaf("residuals", "flow-law residuals", diagnose_residuals);
        s->add_option("--flow", da.flow, "csf, vfe or auto")->capture_default_str();
        s->add_option("--trim", da.trim)->capture_default_str();
    }

    // shapes
    ShapeArgs sa;
    {
        auto* s = app.add_subcommand("shape", "write a sample curve");
        s->fallthrough();
        s->add_option("--kind", sa.kind, "circle, ellipse or helix")->capture_default_str();
        s->add_option("--a", sa.a, "radius or semi-axis")->capture_default_str();
        s->add_option("--b", sa.b, "semi-axis or helix pitch")->capture_default_str();
        s->add_option("--n", sa.n)->capture_default_str();
        s->add_option("--dimension", sa.dimension)->capture_default_str();
        s->add_option("--u0", sa.u0)->capture_default_str();
        s->add_option("--u1", sa.u1)->capture_default_str();
        leaves.emplace_back(s, [&](Run& r) { shape_cmd(r, sa); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\ninvalid-argument\n";
        return 2;
    }

    for (auto& [sub, fn] : leaves) {
        if (!sub->parsed()) continue;
        std::string command = sub->get_name();
        for (const CLI::App* p = sub->get_parent(); p && p != &app; p = p->get_parent()) command = p->get_name() + " " + command;
        try {
            Run run(g, command);
            run.parameters() = cli::collect_parameters(*sub);
            fn(run);
            run.finish();
            return 0;
        } catch (const Error& e) {
            std::cerr << e.what() << "\n" << e.token() << "\n";
            return cli::is_config_error(e.token()) ? 2 : 3;
        } catch (const std::filesystem::filesystem_error& e) {
            std::cerr << e.what() << "\noutput-write-failed\n";
            return 3;
        }
    }
    std::cerr << "no command given\ninvalid-argument\n";
    return 2;
}

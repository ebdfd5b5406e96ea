// Command-line front end: residual sweeps, classification verification,
// Dirichlet/shooting drivers, cone angles, hypersurface flows, bienergy
// quadrature and the action table. CSV data, JSON summaries, deterministic
// 17-significant-digit formatting.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "biharm/hypersurface.hpp"
#include "biharm/rotsym.hpp"
#include "biharm/solvers.hpp"

using json = nlohmann::ordered_json;
using namespace biharm;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + path + "'");
    out << content;
}

WarpingFunction parse_warp_json(const json& w) {
    if (w.is_string()) {
        std::string s = w.get<std::string>();
        if (s == "r") return WarpingFunction::euclidean();
        return WarpingFunction::from_expr(
            parse_expr(s, std::vector<std::string>{"r", "a"}),
            std::numeric_limits<double>::infinity());
    }
    if (w.contains("sphere")) return WarpingFunction::sphere(w["sphere"].get<double>());
    if (w.contains("hyperbolic")) return WarpingFunction::hyperbolic(w["hyperbolic"].get<double>());
    if (w.contains("expr")) {
        double r_max = w.contains("r_max") ? w["r_max"].get<double>()
                                           : std::numeric_limits<double>::infinity();
        return WarpingFunction::from_expr(
            parse_expr(w["expr"].get<std::string>(), std::vector<std::string>{"r", "a"}), r_max);
    }
    throw ValidationError("warp descriptor needs 'sphere', 'hyperbolic' or 'expr'");
}

// Shorthand: "r" | "sin(r)"/"sin(a)" | "sinh(r)"/"sinh(a)" | inline JSON | expression text.
// The JSON form accepts either a bare warp descriptor or the full model
// descriptor {"m": ..., "warp": ...}; a dimension given there must agree
// with --m.
WarpingFunction parse_warp(const std::string& text, int expected_m) {
    if (text == "r" || text == "a") return WarpingFunction::euclidean();
    if (text == "sin(r)" || text == "sin(a)") return WarpingFunction::sphere(1.0);
    if (text == "sinh(r)" || text == "sinh(a)") return WarpingFunction::hyperbolic(1.0);
    if (!text.empty() && text.front() == '{') {
        json j = json::parse(text);
        if (j.contains("warp")) {
            if (j.contains("m") && j["m"].get<int>() != expected_m)
                throw ValidationError("model descriptor dimension disagrees with --m");
            return parse_warp_json(j["warp"]);
        }
        return parse_warp_json(j);
    }
    return WarpingFunction::from_expr(parse_expr(text, std::vector<std::string>{"r", "a"}),
                                      std::numeric_limits<double>::infinity());
}

// "name=value" pairs for profile parameters; c is bound separately.
std::map<std::string, double> parse_params(const std::vector<std::string>& items, double c) {
    std::map<std::string, double> out;
    out["c"] = c;
    for (const std::string& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("parameter must look like name=value: '" + item + "'");
        try {
            out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw ValidationError("bad numeric value in parameter '" + item + "'");
        }
    }
    return out;
}

RadialProfile make_profile(const std::string& alpha_s, const std::map<std::string, double>& params) {
    std::vector<std::string> symbols = {"r"};
    for (const auto& [name, value] : params) symbols.push_back(name);
    return RadialProfile::from_expr(parse_expr(alpha_s, symbols), params);
}

struct GridSpec {
    double start = 0.1, end = 10.0;
    int count = 100;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &g.start, &g.end, &g.count) != 3)
        throw ValidationError("grid must be start:end:count");
    if (g.count < 2) throw ValidationError("grid count must be >= 2");
    if (!(g.start < g.end)) throw ValidationError("grid start must be below end");
    return g;
}

std::string class_name(MapClass c) {
    switch (c) {
        case MapClass::Harmonic: return "harmonic";
        case MapClass::ProperBiharmonic: return "proper-biharmonic";
        case MapClass::None: return "none";
    }
    return "?";
}

// ---------------------------------------------------------------------------

int cmd_residual(int m, const std::string& dom_s, const std::string& cod_s,
                 const std::string& alpha_s, const std::map<std::string, double>& params,
                 const std::string& grid_s, const std::string& out) {
    GridSpec grid = parse_grid(grid_s);
    MapPair pair = make_map_pair(make_model(m, parse_warp(dom_s, m)),
                                 make_model(m, parse_warp(cod_s, m)),
                                 make_profile(alpha_s, params));
    std::ostringstream csv;
    csv << "r,F,res_F,res_expanded\n";
    for (int i = 0; i < grid.count; ++i) {
        double r = grid.start + (grid.end - grid.start) * i / (grid.count - 1);
        csv << fmt(r) << ',' << fmt(tension_F(pair, r, 0).value()) << ','
            << fmt(bitension_residual_F(pair, r)) << ','
            << fmt(bitension_residual_expanded(pair, r)) << '\n';
    }
    write_output(out, csv.str());
    return 0;
}

int cmd_verify_classification(double c, const std::string& out) {
    json rows = json::array();
    for (const CatalogEntry& entry : classification_catalog()) {
        json row;
        row["case"] = entry.case_id;
        row["dom"] = entry.dom_desc;
        row["cod"] = entry.cod_desc;
        row["profile"] = entry.profile_form;
        row["classification"] = class_name(entry.classification);
        if (entry.classification == MapClass::None) {
            row["status"] = "no-solution";
        } else {
            MapPair pair = entry.instantiate(c);
            double hi = std::min(entry.r_bound(c) * 0.9, 10.0);
            double max_F = 0.0, max_res = 0.0;
            for (int i = 0; i < 50; ++i) {
                double r = 0.05 + (hi - 0.05) * i / 49.0;
                max_F = std::max(max_F, std::abs(tension_F(pair, r, 0).value()));
                max_res = std::max(max_res, std::abs(bitension_residual_F(pair, r)));
            }
            row["max_tension"] = max_F;
            row["max_bitension_residual"] = max_res;
            bool ok = entry.classification == MapClass::Harmonic
                          ? max_F <= 1e-10
                          : (max_res <= 1e-8 && max_F > 0.1);
            row["status"] = ok ? "verified" : "FAILED";
        }
        rows.push_back(row);
    }
    json report;
    report["c"] = c;
    report["cases"] = rows;
    write_output(out, report.dump(2) + "\n");
    bool all_ok = true;
    for (const auto& row : rows) all_ok = all_ok && row["status"] != "FAILED";
    return all_ok ? 0 : 2;
}

int cmd_dirichlet(double rstar, const std::string& out) {
    DirichletResult res = dirichlet_conformal(rstar);
    json report;
    report["R_star"] = rstar;
    report["c"] = res.c;
    report["residual_max"] = res.residual_max;
    report["pass"] = res.residual_max <= 1e-8;
    write_output(out, report.dump(2) + "\n");
    return report["pass"].get<bool>() ? 0 : 2;
}

int cmd_harmonic_shoot(double slope, double rmax, bool scan, const std::string& traj_csv,
                       const std::string& out) {
    json report;
    if (scan) {
        double best = 0.0, best_a = 0.0;
        for (double a = 0.1; a <= 10.0; a += 0.1) {
            HarmonicShootResult res = shoot_harmonic_R4(a, rmax);
            if (res.sup_alpha > best) {
                best = res.sup_alpha;
                best_a = a;
            }
        }
        report["scan"] = {{"a_lo", 0.1}, {"a_hi", 10.0}, {"step", 0.1}};
        report["R4_estimate"] = best;
        report["argmax_slope"] = best_a;
    }
    HarmonicShootResult res = shoot_harmonic_R4(slope, rmax);
    report["slope"] = slope;
    report["r_max"] = rmax;
    report["sup_alpha"] = res.sup_alpha;
    report["crossings_of_half_pi"] = res.crossings;
    report["alpha_end"] = res.trajectory.back_state()[0];
    if (!traj_csv.empty()) {
        std::ostringstream csv;
        csv << "r,alpha,alpha_dot\n";
        for (std::size_t i = 0; i < res.trajectory.times.size(); ++i)
            csv << fmt(res.trajectory.times[i]) << ',' << fmt(res.trajectory.states[i][0]) << ','
                << fmt(res.trajectory.states[i][1]) << '\n';
        write_output(traj_csv, csv.str());
    }
    write_output(out, report.dump(2) + "\n");
    return 0;
}

int cmd_cone(const std::string& action_label, const std::string& out) {
    OrbitAction action = action_lookup(action_label);
    json report;
    report["action"] = action.label;
    report["d"] = action.d;
    report["angles"] = minimal_cone_angles(action);
    write_output(out, report.dump(2) + "\n");
    return 0;
}

std::string flow_csv(const FlowResult& flow) {
    std::ostringstream csv;
    csv << "s,x,y,theta,k_d,mean_f,A2,res_normal,res_tangential\n";
    for (const FlowSample& p : flow.samples)
        csv << fmt(p.s) << ',' << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.theta) << ','
            << fmt(p.kd) << ',' << fmt(p.mean_f) << ',' << fmt(p.A2) << ',' << fmt(p.res_normal)
            << ',' << fmt(p.res_tangential) << '\n';
    return csv.str();
}

int cmd_profile(const std::string& kind, const std::string& action_label, double f0, double x0,
                double y0, double theta0, double kd0, double f1_0, double slen, double step,
                const std::string& out) {
    OrbitAction action = action_lookup(action_label);
    FlowResult flow;
    if (kind == "cmc")
        flow = cmc_flow(action, f0, x0, y0, theta0, slen, step);
    else if (kind == "biconservative")
        flow = biconservative_flow(action, x0, y0, theta0, slen, step);
    else if (kind == "biharmonic")
        flow = biharmonic_flow(action, x0, y0, theta0, kd0, f1_0, slen, step);
    else
        throw ValidationError("profile kind must be cmc, biconservative or biharmonic");
    write_output(out, flow_csv(flow));
    if (flow.reason == StopReason::StepUnderflow)
        throw NumericalError("flow stopped on step underflow");
    return 0;
}

int cmd_bienergy(int m, const std::string& dom_s, const std::string& cod_s,
                 const std::string& alpha_s, const std::map<std::string, double>& params,
                 double a, double b, int panels, const std::string& out) {
    MapPair pair = make_map_pair(make_model(m, parse_warp(dom_s, m)),
                                 make_model(m, parse_warp(cod_s, m)),
                                 make_profile(alpha_s, params));
    json report;
    report["interval"] = {a, b};
    report["panels"] = panels;
    report["value"] = reduced_bienergy(pair, a, b, panels);
    write_output(out, report.dump(2) + "\n");
    return 0;
}

int cmd_table(const std::string& out) {
    json rows = json::array();
    for (const OrbitAction& a : action_catalog()) {
        json row;
        row["label"] = a.label;
        row["d"] = a.d;
        row["n"] = a.n;
        row["mults"] = a.mults;
        rows.push_back(row);
    }
    json report;
    report["actions"] = rows;
    write_output(out, report.dump(2) + "\n");
    return 0;
}

// Pre-scan argv for --config and return its JSON so flags can override it.
json load_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) throw ValidationError(std::string("cannot read config ") + argv[i + 1]);
            return json::parse(in);
        }
    }
    return json::object();
}

template <typename T>
void from_config(const json& cfg, const std::string& key, T& value) {
    if (cfg.contains(key)) value = cfg[key].get<T>();
}

}  // namespace

int main(int argc, char** argv) {
    try {
        json cfg = load_config(argc, argv);

        CLI::App app{"reduction of biharmonicity to ODEs: residual sweeps, "
                     "classification checks, cone angles and profile flows"};
        app.require_subcommand(1);
        app.fallthrough();  // --config and --out may follow the subcommand
        std::string config_path, out;
        app.add_option("--config", config_path, "JSON config file (flags override)");
        from_config(cfg, "out", out);

        int m = 4;
        std::string dom = "r", cod = "sin(a)", alpha = "2*atan(c^2*r)", grid = "0.1:10:100";
        double c = 1.0;
        from_config(cfg, "m", m);
        from_config(cfg, "dom", dom);
        from_config(cfg, "cod", cod);
        from_config(cfg, "alpha", alpha);
        from_config(cfg, "grid", grid);
        from_config(cfg, "c", c);

        std::vector<std::string> params;
        if (cfg.contains("params"))
            for (auto it = cfg["params"].begin(); it != cfg["params"].end(); ++it)
                params.push_back(it.key() + "=" + std::to_string(it.value().get<double>()));

        auto* residual = app.add_subcommand("residual", "tension and bitension residual sweep");
        residual->add_option("--m", m, "model dimension");
        residual->add_option("--dom", dom, "domain warp (r | sin(r) | sinh(r) | expr | JSON)");
        residual->add_option("--cod", cod, "codomain warp");
        residual->add_option("--alpha", alpha, "profile expression in r with parameter c");
        residual->add_option("--c", c, "profile parameter");
        residual->add_option("--param", params, "extra profile parameter name=value");
        residual->add_option("--grid", grid, "start:end:count");
        residual->add_option("--out", out, "output path (default stdout)");

        auto* verify = app.add_subcommand("verify-classification",
                                          "check all nine classification cases");
        verify->add_option("--c", c, "profile parameter");
        verify->add_option("--out", out, "output path");

        double rstar = 1.5;
        from_config(cfg, "rstar", rstar);
        auto* dirichlet = app.add_subcommand("dirichlet", "conformal Dirichlet data driver");
        dirichlet->add_option("--rstar", rstar, "boundary value R* in (0, pi)");
        dirichlet->add_option("--out", out, "output path");

        double slope = 1.0, rmax = 100.0;
        bool scan = false;
        std::string traj_csv;
        from_config(cfg, "slope", slope);
        from_config(cfg, "rmax", rmax);
        auto* shoot = app.add_subcommand("harmonic-shoot", "harmonic map shooting from the pole");
        shoot->add_option("--slope", slope, "initial slope a");
        shoot->add_option("--rmax", rmax, "integration end");
        shoot->add_flag("--scan", scan, "scan slopes 0.1..10 and report the R4 estimate");
        shoot->add_option("--traj", traj_csv, "also write the trajectory CSV here");
        shoot->add_option("--out", out, "output path");

        std::string action_label = "SO(2)xSO(3)";
        from_config(cfg, "action", action_label);
        auto* cone = app.add_subcommand("cone", "minimal cone angles of an action");
        cone->add_option("--action", action_label, "Table-1 action label");
        cone->add_option("--out", out, "output path");

        std::string kind = "cmc";
        double f0 = 1.0, x0 = 1.0, y0 = 1.0, theta0 = 0.785398163397448279, kd0 = 0.0, f1_0 = 0.0;
        double slen = 1.0, step = 1e-3;
        from_config(cfg, "kind", kind);
        from_config(cfg, "f0", f0);
        from_config(cfg, "x0", x0);
        from_config(cfg, "y0", y0);
        from_config(cfg, "theta0", theta0);
        from_config(cfg, "kd0", kd0);
        from_config(cfg, "f1_0", f1_0);
        from_config(cfg, "slen", slen);
        from_config(cfg, "step", step);
        auto* profile = app.add_subcommand("profile", "integrate a profile-curve flow");
        profile->add_option("--kind", kind, "cmc | biconservative | biharmonic");
        profile->add_option("--action", action_label, "Table-1 action label");
        profile->add_option("--f0", f0, "target mean curvature (cmc)");
        profile->add_option("--x0", x0, "start x");
        profile->add_option("--y0", y0, "start y");
        profile->add_option("--theta0", theta0, "start direction");
        profile->add_option("--kd0", kd0, "start profile curvature (biharmonic)");
        profile->add_option("--f1", f1_0, "start mean-curvature rate (biharmonic)");
        profile->add_option("--slen", slen, "arc length to integrate");
        profile->add_option("--step", step, "RK4 step");
        profile->add_option("--out", out, "output path");

        double ia = 0.1, ib = 10.0;
        int panels = 2048;
        from_config(cfg, "a", ia);
        from_config(cfg, "b", ib);
        from_config(cfg, "panels", panels);
        auto* bienergy = app.add_subcommand("bienergy", "reduced bienergy over [a, b]");
        bienergy->add_option("--m", m, "model dimension");
        bienergy->add_option("--dom", dom, "domain warp");
        bienergy->add_option("--cod", cod, "codomain warp");
        bienergy->add_option("--alpha", alpha, "profile expression");
        bienergy->add_option("--c", c, "profile parameter");
        bienergy->add_option("--param", params, "extra profile parameter name=value");
        bienergy->add_option("--a", ia, "interval start");
        bienergy->add_option("--b", ib, "interval end");
        bienergy->add_option("--panels", panels, "Simpson panels (even)");
        bienergy->add_option("--out", out, "output path");

        auto* table = app.add_subcommand("table", "print the cohomogeneity-two action table");
        table->add_option("--out", out, "output path");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e);
            return code == 0 ? 0 : 1;  // help is success, bad usage is a config error
        }

        if (residual->parsed())
            return cmd_residual(m, dom, cod, alpha, parse_params(params, c), grid, out);
        if (verify->parsed()) return cmd_verify_classification(c, out);
        if (dirichlet->parsed()) return cmd_dirichlet(rstar, out);
        if (shoot->parsed()) return cmd_harmonic_shoot(slope, rmax, scan, traj_csv, out);
        if (cone->parsed()) return cmd_cone(action_label, out);
        if (profile->parsed())
            return cmd_profile(kind, action_label, f0, x0, y0, theta0, kd0, f1_0, slen, step, out);
        if (bienergy->parsed())
            return cmd_bienergy(m, dom, cod, alpha, parse_params(params, c), ia, ib, panels, out);
        if (table->parsed()) return cmd_table(out);
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

// Command-line front end: simulate / equilibria / classify / global-check /
// bounds-check / bifurcate / order-sweep / convergence over a parameter
// file, emitting CSV and static SVG artifacts plus a run.json manifest
// that records every resolved option (rerun with --manifest to reproduce
// a run byte for byte).

#include "fodechain/equilibria.hpp"
#include "fodechain/fode.hpp"
#include "fodechain/model.hpp"
#include "fodechain/scan.hpp"
#include "fodechain/specfun.hpp"
#include "fodechain/stability.hpp"
#include "fodechain/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace fodechain;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

struct RunConfig {
    std::string subcommand;
    std::string params_file;
    std::optional<model::DimParams> params;
    double order = 1.0;
    double t_final = 2000.0;
    double step = 0.05;
    model::State init{1.2, 1.2, 1.2};
    double transient_fraction = 0.7;
    double cluster_tol = 1e-3;
    std::string memory = "full";
    double window = 0.0;
    unsigned threads = 0;
    std::string out_dir = ".";
    // sweep options
    std::string sweep_name = "a0";
    double range_lo = 0.0;
    double range_hi = 0.0;
    int n_points = 51;
    std::vector<double> orders;
    // convergence options
    std::vector<double> steps_list = {0.04, 0.02, 0.01};
};

model::State parse_init(const std::string& text) {
    std::istringstream in(text);
    model::State s;
    char c1 = 0, c2 = 0;
    if (!(in >> s.x >> c1 >> s.y >> c2 >> s.z) || c1 != ',' || c2 != ',') {
        throw fode::ConfigError("--init expects three comma-separated numbers, got '" + text +
                                "'");
    }
    return s;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw fode::ConfigError("--range expects lo:hi, got '" + text + "'");
    }
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw fode::ConfigError("--range expects numeric lo:hi, got '" + text + "'");
    }
}

json params_to_json(const model::DimParams& p) {
    return json{{"a0", p.a0}, {"b0", p.b0}, {"v0", p.v0}, {"v1", p.v1},
                {"v2", p.v2}, {"v3", p.v3}, {"d0", p.d0}, {"d1", p.d1},
                {"d2", p.d2}, {"d3", p.d3}, {"a1", p.a1}, {"c3", p.c3}};
}

model::DimParams params_from_json(const json& j) {
    model::DimParams p;
    p.a0 = j.at("a0");
    p.b0 = j.at("b0");
    p.v0 = j.at("v0");
    p.v1 = j.at("v1");
    p.v2 = j.at("v2");
    p.v3 = j.at("v3");
    p.d0 = j.at("d0");
    p.d1 = j.at("d1");
    p.d2 = j.at("d2");
    p.d3 = j.at("d3");
    p.a1 = j.at("a1");
    p.c3 = j.at("c3");
    p.validate();
    return p;
}

json config_to_json(const RunConfig& cfg, const std::vector<std::string>& outputs) {
    json j;
    j["tool"] = "fodechain";
    j["subcommand"] = cfg.subcommand;
    if (!cfg.params_file.empty()) {
        j["params_file"] = cfg.params_file;
    }
    if (cfg.params) {
        j["params"] = params_to_json(*cfg.params);
    }
    j["options"] = {
        {"order", cfg.order},
        {"t_final", cfg.t_final},
        {"step", cfg.step},
        {"init", {cfg.init.x, cfg.init.y, cfg.init.z}},
        {"transient_fraction", cfg.transient_fraction},
        {"cluster_tol", cfg.cluster_tol},
        {"memory", cfg.memory},
        {"window", cfg.window},
        {"threads", cfg.threads},
        {"sweep", cfg.sweep_name},
        {"range_lo", cfg.range_lo},
        {"range_hi", cfg.range_hi},
        {"points", cfg.n_points},
        {"orders", cfg.orders},
        {"steps", cfg.steps_list},
    };
    j["outputs"] = outputs;
    return j;
}

RunConfig config_from_manifest(const fs::path& path, const std::string& subcommand) {
    std::ifstream in(path);
    if (!in) {
        throw fode::ConfigError("cannot open manifest: " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw fode::ConfigError("manifest " + path.string() + " is not valid JSON: " + e.what());
    }
    if (j.value("subcommand", "") != subcommand) {
        throw fode::ConfigError("manifest records subcommand '" +
                                j.value("subcommand", std::string{}) + "', expected '" +
                                subcommand + "'");
    }
    RunConfig cfg;
    cfg.subcommand = subcommand;
    cfg.params_file = j.value("params_file", std::string{});
    if (j.contains("params")) {
        cfg.params = params_from_json(j["params"]);
    }
    const json& opt = j.at("options");
    cfg.order = opt.at("order");
    cfg.t_final = opt.at("t_final");
    cfg.step = opt.at("step");
    cfg.init = {opt.at("init")[0], opt.at("init")[1], opt.at("init")[2]};
    cfg.transient_fraction = opt.at("transient_fraction");
    cfg.cluster_tol = opt.at("cluster_tol");
    cfg.memory = opt.at("memory");
    cfg.window = opt.at("window");
    cfg.threads = opt.at("threads");
    cfg.sweep_name = opt.at("sweep");
    cfg.range_lo = opt.at("range_lo");
    cfg.range_hi = opt.at("range_hi");
    cfg.n_points = opt.at("points");
    cfg.orders = opt.at("orders").get<std::vector<double>>();
    cfg.steps_list = opt.at("steps").get<std::vector<double>>();
    return cfg;
}

fode::MemoryPolicy memory_policy(const RunConfig& cfg) {
    if (cfg.memory == "full") {
        return fode::MemoryPolicy::full();
    }
    if (cfg.memory == "truncated") {
        return fode::MemoryPolicy::truncated(cfg.window);
    }
    throw fode::ConfigError("--memory must be 'full' or 'truncated', got '" + cfg.memory + "'");
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs) {
    auto out = open_output(fs::path(cfg.out_dir) / "run.json");
    out << config_to_json(cfg, outputs).dump(2) << '\n';
}

void require_params(const RunConfig& cfg) {
    if (!cfg.params) {
        throw fode::ConfigError("--params <file> is required for " + cfg.subcommand);
    }
}

// --- subcommand bodies ------------------------------------------------------

int run_simulate(RunConfig cfg) {
    require_params(cfg);
    scan::SimulationSpec spec;
    spec.params = *cfg.params;
    spec.order = cfg.order;
    spec.initial_state = cfg.init;
    spec.t_final = cfg.t_final;
    spec.step = cfg.step;
    spec.transient_fraction = cfg.transient_fraction;
    spec.memory = memory_policy(cfg);
    const scan::SimulationResult res = scan::simulate(spec);

    {
        auto out = open_output(fs::path(cfg.out_dir) / "trajectory.csv");
        fode::write_trajectory_csv(out, res.trajectory);
    }
    {
        std::vector<svg::Series> series(3);
        const char* labels[3] = {"X", "Y", "Z"};
        const char* colors[3] = {"#1f77b4", "#d62728", "#2ca02c"};
        for (int c = 0; c < 3; ++c) {
            series[c].label = labels[c];
            series[c].color = colors[c];
            series[c].x = res.trajectory.times;
            series[c].y.reserve(res.trajectory.size());
            for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
                series[c].y.push_back(res.trajectory.state(i, static_cast<std::size_t>(c)));
            }
        }
        auto out = open_output(fs::path(cfg.out_dir) / "trajectory.svg");
        std::ostringstream title;
        title << "trajectory (m = " << cfg.order << ")";
        svg::write_plot(out, series, "t", "population", title.str());
    }
    write_manifest(cfg, {"trajectory.csv", "trajectory.svg"});

    const std::size_t last = res.trajectory.size() - 1;
    std::cout << std::setprecision(10) << "final state: (" << res.trajectory.state(last, 0)
              << ", " << res.trajectory.state(last, 1) << ", " << res.trajectory.state(last, 2)
              << ") at t = " << res.trajectory.times[last] << "\n";
    std::cout << "non-negativity: " << (res.monitor.negativity_clean() ? "clean" : "VIOLATED")
              << "; bounded-region check: "
              << (res.monitor.omega_applicable ? "active" : "not applicable") << "; "
              << res.monitor.violations.size() << " violation(s)\n";
    return kExitOk;
}

int run_equilibria(RunConfig cfg) {
    require_params(cfg);
    const model::NondimParams q = model::nondimensionalize(*cfg.params);
    const auto eqs = equilibria::find_equilibria(q, &*cfg.params);
    {
        auto out = open_output(fs::path(cfg.out_dir) / "equilibria.csv");
        equilibria::write_equilibria_csv(out, eqs);
    }
    write_manifest(cfg, {"equilibria.csv"});
    std::cout << std::setprecision(6) << std::fixed;
    for (const auto& e : eqs) {
        std::cout << equilibria::kind_name(e.kind) << ": nondim (" << e.coords_nondim.x << ", "
                  << e.coords_nondim.y << ", " << e.coords_nondim.z << ")";
        if (e.coords_dim) {
            std::cout << "  dim (" << e.coords_dim->x << ", " << e.coords_dim->y << ", "
                      << e.coords_dim->z << ")";
        }
        if (e.kind == equilibria::Kind::interior) {
            std::cout << (e.existence_ok ? "  [exists]" : "  [existence conditions violated]");
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int run_classify(RunConfig cfg) {
    require_params(cfg);
    const model::NondimParams q = model::nondimensionalize(*cfg.params);
    const auto eqs = equilibria::find_equilibria(q, &*cfg.params);
    std::vector<stability::StabilityReport> reports;
    reports.reserve(eqs.size());
    for (const auto& e : eqs) {
        reports.push_back(stability::analyze(q, e, cfg.order));
    }
    {
        auto out = open_output(fs::path(cfg.out_dir) / "stability.csv");
        stability::write_stability_csv(out, reports);
    }
    {
        auto out = open_output(fs::path(cfg.out_dir) / "stability.txt");
        stability::write_stability_text(out, reports, cfg.order);
    }
    write_manifest(cfg, {"stability.csv", "stability.txt"});
    stability::write_stability_text(std::cout, reports, cfg.order);
    return kExitOk;
}

int run_global_check(RunConfig cfg) {
    require_params(cfg);
    const auto rep = stability::global_stability_check(*cfg.params);
    {
        auto out = open_output(fs::path(cfg.out_dir) / "global_check.csv");
        out << "cond1,cond2,cond3,alpha,all_satisfied,x_star,y_star\n"
            << std::setprecision(12) << rep.cond1 << ',' << rep.cond2 << ',' << rep.cond3 << ','
            << rep.alpha << ',' << (rep.all_satisfied ? 1 : 0) << ',' << rep.x_star_used << ','
            << rep.y_star_used << '\n';
    }
    write_manifest(cfg, {"global_check.csv"});
    std::cout << std::setprecision(4) << std::fixed << "global-stability conditions: ("
              << rep.cond1 << ", " << rep.cond2 << ", " << rep.cond3 << "), alpha = "
              << rep.alpha << "\n"
              << (rep.all_satisfied ? "all conditions satisfied: interior equilibrium is "
                                      "globally asymptotically stable for every order"
                                    : "conditions violated: no global-stability conclusion")
              << "\n";
    return kExitOk;
}

int run_bounds_check(RunConfig cfg) {
    require_params(cfg);
    const auto rep = stability::boundedness_check(*cfg.params);
    {
        auto out = open_output(fs::path(cfg.out_dir) / "bounds_check.csv");
        out << "lhs,rhs,satisfied,M,omega_x,omega_xy,omega_xyz\n" << std::setprecision(12)
            << rep.lhs << ',' << rep.rhs << ',' << (rep.satisfied ? 1 : 0) << ',';
        if (rep.bound_m) {
            out << *rep.bound_m;
        }
        out << ',' << rep.omega_x << ',' << rep.omega_xy << ',';
        if (rep.omega_xyz) {
            out << *rep.omega_xyz;
        }
        out << '\n';
    }
    write_manifest(cfg, {"bounds_check.csv"});
    std::cout << std::setprecision(4) << std::fixed << "beta + beta/(4b) + r = " << rep.lhs
              << (rep.satisfied ? " < " : " >= ") << "q/p = " << rep.rhs << "\n"
              << (rep.satisfied ? "solutions are uniformly bounded (dissipative system)"
                                : "boundedness condition not satisfied")
              << "\n";
    return kExitOk;
}

void write_sweep_artifacts(const RunConfig& cfg, const scan::SweepResult& result,
                           const std::string& x_label) {
    {
        auto out = open_output(fs::path(cfg.out_dir) / "sweep.csv");
        scan::write_sweep_csv(out, result);
    }
    {
        svg::Series dots;
        dots.points_only = true;
        for (const auto& pt : result.points) {
            for (double peak : pt.peaks) {
                dots.x.push_back(pt.value);
                dots.y.push_back(peak);
            }
        }
        std::vector<svg::Series> series = {dots};
        auto out = open_output(fs::path(cfg.out_dir) / "sweep.svg");
        svg::write_plot(out, series, x_label, "X peaks", "attractor peaks vs " + x_label);
    }
}

scan::SweepOptions sweep_options(const RunConfig& cfg) {
    scan::SweepOptions opt;
    opt.initial_state = cfg.init;
    opt.t_final = cfg.t_final;
    opt.step = cfg.step;
    opt.transient_fraction = cfg.transient_fraction;
    opt.cluster_tol = cfg.cluster_tol;
    opt.memory = memory_policy(cfg);
    opt.threads = cfg.threads;
    return opt;
}

int run_bifurcate(RunConfig cfg) {
    require_params(cfg);
    if (!(cfg.range_lo < cfg.range_hi)) {
        throw fode::ConfigError("--range lo:hi with lo < hi is required for bifurcate");
    }
    const scan::SweepParam swept = [&] {
        if (cfg.sweep_name == "a0") {
            return scan::SweepParam::a0;
        }
        if (cfg.sweep_name == "c3") {
            return scan::SweepParam::c3;
        }
        throw fode::ConfigError("--sweep must be a0 or c3, got '" + cfg.sweep_name + "'");
    }();
    const auto result = scan::bifurcation_sweep(*cfg.params, swept, cfg.range_lo, cfg.range_hi,
                                                cfg.n_points, cfg.order, sweep_options(cfg));
    write_sweep_artifacts(cfg, result, cfg.sweep_name);
    write_manifest(cfg, {"sweep.csv", "sweep.svg"});
    int diverged = 0;
    for (const auto& pt : result.points) {
        diverged += pt.error.empty() ? 0 : 1;
    }
    std::cout << "swept " << cfg.sweep_name << " over [" << cfg.range_lo << ", " << cfg.range_hi
              << "] at " << cfg.n_points << " points (order " << cfg.order << "), " << diverged
              << " diverged\n";
    return kExitOk;
}

int run_order_sweep(RunConfig cfg) {
    require_params(cfg);
    if (cfg.orders.empty()) {
        throw fode::ConfigError("--orders m1,m2,... is required for order-sweep");
    }
    const auto result = scan::order_sweep(*cfg.params, cfg.orders, sweep_options(cfg));
    write_sweep_artifacts(cfg, result, "m");
    write_manifest(cfg, {"sweep.csv", "sweep.svg"});
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        std::cout << "m = " << result.values[i] << ": " << result.points[i].label.name() << "\n";
    }
    return kExitOk;
}

int run_convergence(RunConfig cfg) {
    fode::FodeProblem prob;
    prob.order = cfg.order;
    prob.dimension = 1;
    prob.initial_state = {1.0};
    prob.t0 = 0.0;
    prob.t_final = 5.0;
    prob.step = cfg.steps_list.front();
    prob.rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; };
    const double m = cfg.order;
    auto exact = [m](double t) {
        return std::vector<double>{t > 0.0 ? specfun::mittag_leffler(m, -std::pow(t, m)) : 1.0};
    };
    const fode::ConvergenceStudy study = fode::convergence_study(prob, exact, cfg.steps_list);
    {
        auto out = open_output(fs::path(cfg.out_dir) / "convergence.csv");
        out << "h,sup_error\n" << std::setprecision(12);
        for (std::size_t i = 0; i < study.steps.size(); ++i) {
            out << study.steps[i] << ',' << study.errors[i] << '\n';
        }
    }
    write_manifest(cfg, {"convergence.csv"});
    std::cout << std::setprecision(4) << "estimated convergence order at m = " << cfg.order
              << ": slope = " << study.slope << " (test problem D^m x = -x on [0, 5])\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Caputo fractional-order food-chain toolkit"};
    app.require_subcommand(1);

    RunConfig cli;
    std::string init_text = "1.2,1.2,1.2";
    std::string range_text;
    std::string manifest_path;

    struct Sub {
        CLI::App* cmd;
        int (*body)(RunConfig);
    };
    std::vector<Sub> subs;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--params", cli.params_file, "parameter file (name = value lines)");
        cmd->add_option("--order,-m", cli.order, "fractional order in (0, 1]");
        cmd->add_option("--tfinal", cli.t_final, "integration horizon");
        cmd->add_option("--step", cli.step, "grid spacing h");
        cmd->add_option("--init", init_text, "initial state x,y,z");
        cmd->add_option("--transient", cli.transient_fraction, "transient fraction in [0,1)");
        cmd->add_option("--cluster-tol", cli.cluster_tol, "peak clustering tolerance");
        cmd->add_option("--memory", cli.memory, "history policy: full | truncated");
        cmd->add_option("--window", cli.window, "truncated-memory window length");
        cmd->add_option("--threads", cli.threads, "sweep worker threads (0 = auto)");
        cmd->add_option("--out", cli.out_dir, "output directory");
        cmd->add_option("--manifest", manifest_path, "replay a recorded run.json");
    };

    auto* simulate =
        app.add_subcommand("simulate", "integrate the food chain and export the trajectory");
    add_common(simulate);
    subs.push_back({simulate, run_simulate});

    auto* equilibria_cmd =
        app.add_subcommand("equilibria", "enumerate equilibria with existence conditions");
    add_common(equilibria_cmd);
    subs.push_back({equilibria_cmd, run_equilibria});

    auto* classify = app.add_subcommand("classify", "stability analysis of every equilibrium");
    add_common(classify);
    subs.push_back({classify, run_classify});

    auto* global_check =
        app.add_subcommand("global-check", "Lyapunov global-stability conditions");
    add_common(global_check);
    subs.push_back({global_check, run_global_check});

    auto* bounds_check =
        app.add_subcommand("bounds-check", "dissipativity / bounded-region condition");
    add_common(bounds_check);
    subs.push_back({bounds_check, run_bounds_check});

    auto* bifurcate = app.add_subcommand("bifurcate", "sweep a0 or c3 and classify attractors");
    add_common(bifurcate);
    bifurcate->add_option("--sweep", cli.sweep_name, "swept parameter: a0 | c3");
    bifurcate->add_option("--range", range_text, "sweep range lo:hi");
    bifurcate->add_option("--points", cli.n_points, "number of sweep points");
    subs.push_back({bifurcate, run_bifurcate});

    auto* order_sweep_cmd =
        app.add_subcommand("order-sweep", "classify attractors across fractional orders");
    add_common(order_sweep_cmd);
    order_sweep_cmd->add_option("--orders", cli.orders, "comma-separated order list")
        ->delimiter(',');
    subs.push_back({order_sweep_cmd, run_order_sweep});

    auto* convergence =
        app.add_subcommand("convergence", "convergence-order study on the linear test problem");
    add_common(convergence);
    convergence->add_option("--steps", cli.steps_list, "step sizes, each half the previous")
        ->delimiter(',');
    subs.push_back({convergence, run_convergence});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        for (const Sub& sub : subs) {
            if (!sub.cmd->parsed()) {
                continue;
            }
            RunConfig cfg;
            if (!manifest_path.empty()) {
                cfg = config_from_manifest(manifest_path, sub.cmd->get_name());
                cfg.out_dir = cli.out_dir; // artifacts land where this run asks
            } else {
                cfg = cli;
                cfg.subcommand = sub.cmd->get_name();
                cfg.init = parse_init(init_text);
                if (!range_text.empty()) {
                    std::tie(cfg.range_lo, cfg.range_hi) = parse_range(range_text);
                }
                if (!cfg.params_file.empty()) {
                    cfg.params = model::load_params_file(cfg.params_file);
                }
            }
            fs::create_directories(cfg.out_dir);
            return sub.body(std::move(cfg));
        }
        std::cerr << "no subcommand selected\n";
        return kExitConfig;
    } catch (const fode::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const fode::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

#include "fodechain/scan.hpp"

#include "fodechain/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <thread>

namespace fodechain::scan {
namespace {

constexpr double kNegativityTol = -1e-9;
constexpr double kOmegaSlack = 1.05; // region inflated by 5%
constexpr double kFixedPointVariance = 1e-8;
constexpr int kMaxPeriodicClusters = 8;

fode::FodeProblem make_problem(const model::DimParams& params, double order,
                               const model::State& init, double t_final, double step) {
    fode::FodeProblem prob;
    prob.order = order;
    prob.dimension = 3;
    prob.initial_state = {init.x, init.y, init.z};
    prob.t0 = 0.0;
    prob.t_final = t_final;
    prob.step = step;
    prob.rhs = [params](double, std::span<const double> y, std::span<double> dy) {
        const model::State d =
            model::rhs_dimensional(params, model::State{y[0], y[1], y[2]});
        dy[0] = d.x;
        dy[1] = d.y;
        dy[2] = d.z;
    };
    return prob;
}

void run_parallel(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                fn(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

SweepPoint run_sweep_point(const model::DimParams& params, double order,
                           const SweepOptions& opt, double swept_value,
                           const fode::MemoryPolicy& memory) {
    SweepPoint point;
    point.value = swept_value;
    try {
        fode::FodeProblem prob =
            make_problem(params, order, opt.initial_state, opt.t_final, opt.step);
        const fode::Trajectory traj = fode::integrate_pece(prob, memory);
        point.peaks =
            attractor_peaks(traj, opt.coordinate, opt.transient_fraction, opt.cluster_tol);
        const double var = final_window_variance(traj, opt.coordinate);
        point.label = classify_attractor(point.peaks, var);
        const std::size_t last = traj.size() - 1;
        point.final_state =
            model::State{traj.state(last, 0), traj.state(last, 1), traj.state(last, 2)};
    } catch (const fode::DivergenceError& e) {
        point.label = {AttractorLabel::Type::diverged, 0};
        point.error = e.what();
    }
    return point;
}

/// Runs the sweep body shared by parameter and order sweeps. `configure`
/// maps a swept value to (params, order).
SweepResult run_sweep(const std::string& name, const std::vector<double>& values,
                      const SweepOptions& options,
                      const std::function<std::pair<model::DimParams, double>(double)>& configure) {
    SweepResult result;
    result.swept_name = name;
    result.values = values;
    result.points.resize(values.size());

    fode::MemoryPolicy memory = options.memory;
    if (memory.mode == fode::MemoryPolicy::Mode::truncated && !values.empty()) {
        // guard the short-memory optimization: labels at three spot points
        // must match a full-memory run, otherwise use full memory everywhere
        const std::size_t spots[3] = {0, values.size() / 2, values.size() - 1};
        bool ok = true;
        for (std::size_t idx : spots) {
            const auto [params, order] = configure(values[idx]);
            const SweepPoint truncated =
                run_sweep_point(params, order, options, values[idx], memory);
            const SweepPoint full = run_sweep_point(params, order, options, values[idx],
                                                    fode::MemoryPolicy::full());
            if (truncated.label != full.label) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            memory = fode::MemoryPolicy::full();
        }
    }

    run_parallel(values.size(), options.threads, [&](std::size_t i) {
        const auto [params, order] = configure(values[i]);
        result.points[i] = run_sweep_point(params, order, options, values[i], memory);
    });
    return result;
}

} // namespace

void SimulationSpec::validate() const {
    params.validate();
    if (!(transient_fraction >= 0.0) || transient_fraction >= 1.0) {
        throw fode::ConfigError("SimulationSpec: transient_fraction must lie in [0, 1)");
    }
    if (initial_state.x < 0.0 || initial_state.y < 0.0 || initial_state.z < 0.0) {
        throw fode::ConfigError("SimulationSpec: initial state must be non-negative");
    }
}

bool MonitorReport::negativity_clean() const {
    return std::none_of(violations.begin(), violations.end(),
                        [](const Violation& v) { return v.kind == Kind::negativity; });
}

std::string AttractorLabel::name() const {
    switch (type) {
        case Type::fixed_point: return "fixed-point";
        case Type::periodic: return "periodic(" + std::to_string(period) + ")";
        case Type::aperiodic: return "aperiodic";
        case Type::diverged: return "diverged";
    }
    return "?";
}

SimulationResult simulate(const SimulationSpec& spec) {
    spec.validate();
    fode::FodeProblem prob =
        make_problem(spec.params, spec.order, spec.initial_state, spec.t_final, spec.step);
    SimulationResult result;
    result.trajectory = fode::integrate_pece(prob, spec.memory);
    result.monitor =
        monitor_invariants(result.trajectory, spec.params, spec.transient_fraction);
    return result;
}

MonitorReport monitor_invariants(const fode::Trajectory& traj, const model::DimParams& p,
                                 double transient_fraction) {
    if (traj.dimension != 3) {
        throw fode::ConfigError("monitor_invariants: expected a 3-component trajectory");
    }
    MonitorReport report;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            const double v = traj.state(i, static_cast<std::size_t>(c));
            if (v < kNegativityTol) {
                report.violations.push_back(
                    {MonitorReport::Kind::negativity, i, traj.times[i], c, v});
            }
        }
    }

    const stability::BoundednessReport bounds = stability::boundedness_check(p);
    report.omega_applicable = bounds.satisfied;
    if (!bounds.satisfied) {
        return report; // Theorem-2 hypothesis fails, region check not applicable
    }

    const model::NondimParams q = model::nondimensionalize(p);
    const auto first = static_cast<std::size_t>(
        std::ceil(transient_fraction * static_cast<double>(traj.size())));
    for (std::size_t i = first; i < traj.size(); ++i) {
        const model::State nd = model::state_to_nondim(
            p, model::State{traj.state(i, 0), traj.state(i, 1), traj.state(i, 2)});
        const double v1 = nd.x + nd.y / q.beta;
        const double v2 = v1 + bounds.alpha * nd.z;
        int component = -1;
        double value = 0.0;
        if (nd.x > bounds.omega_x * kOmegaSlack) {
            component = 0;
            value = nd.x;
        } else if (v1 > bounds.omega_xy * kOmegaSlack) {
            component = 1;
            value = v1;
        } else if (v2 > *bounds.omega_xyz * kOmegaSlack) {
            component = 2;
            value = v2;
        }
        if (component >= 0) {
            report.violations.push_back(
                {MonitorReport::Kind::outside_omega, i, traj.times[i], component, value});
        }
    }
    return report;
}

std::vector<double> attractor_peaks(const fode::Trajectory& traj, std::size_t coordinate,
                                    double transient_fraction, double cluster_tol) {
    if (coordinate >= traj.dimension) {
        throw fode::ConfigError("attractor_peaks: coordinate out of range");
    }
    if (!(transient_fraction >= 0.0) || transient_fraction >= 1.0) {
        throw fode::ConfigError("attractor_peaks: transient_fraction must lie in [0, 1)");
    }
    const auto first = static_cast<std::size_t>(
        std::ceil(transient_fraction * static_cast<double>(traj.size())));
    if (traj.size() - first < 100) {
        throw fode::ConfigError("attractor_peaks: fewer than 100 post-transient samples");
    }

    std::vector<double> peaks;
    for (std::size_t i = std::max<std::size_t>(first, 1); i + 1 < traj.size(); ++i) {
        const double prev = traj.state(i - 1, coordinate);
        const double curr = traj.state(i, coordinate);
        const double next = traj.state(i + 1, coordinate);
        if (curr > prev && curr > next) { // strict three-point maximum
            peaks.push_back(curr);
        }
    }
    if (peaks.empty()) {
        return {};
    }

    std::sort(peaks.begin(), peaks.end());
    std::vector<double> reps;
    double cluster_sum = peaks[0];
    std::size_t cluster_n = 1;
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        if (peaks[i] - peaks[i - 1] <= cluster_tol) {
            cluster_sum += peaks[i];
            ++cluster_n;
        } else {
            reps.push_back(cluster_sum / static_cast<double>(cluster_n));
            cluster_sum = peaks[i];
            cluster_n = 1;
        }
    }
    reps.push_back(cluster_sum / static_cast<double>(cluster_n));
    return reps;
}

AttractorLabel classify_attractor(const std::vector<double>& peaks,
                                  double final_window_variance) {
    if (peaks.empty() || final_window_variance < kFixedPointVariance) {
        return {AttractorLabel::Type::fixed_point, 0};
    }
    if (peaks.size() <= kMaxPeriodicClusters) {
        return {AttractorLabel::Type::periodic, static_cast<int>(peaks.size())};
    }
    return {AttractorLabel::Type::aperiodic, 0};
}

double final_window_variance(const fode::Trajectory& traj, std::size_t coordinate,
                             std::size_t window_samples) {
    const std::size_t first =
        traj.size() > window_samples ? traj.size() - window_samples : 0;
    const std::size_t n = traj.size() - first;
    if (n < 2) {
        return 0.0;
    }
    double mean = 0.0;
    for (std::size_t i = first; i < traj.size(); ++i) {
        mean += traj.state(i, coordinate);
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = first; i < traj.size(); ++i) {
        const double d = traj.state(i, coordinate) - mean;
        var += d * d;
    }
    return var / static_cast<double>(n);
}

SweepResult bifurcation_sweep(const model::DimParams& base, SweepParam swept, double lo,
                              double hi, int n_points, double m, const SweepOptions& options) {
    if (!(lo < hi) || n_points < 2) {
        throw fode::ConfigError("bifurcation_sweep: need lo < hi and n_points >= 2");
    }
    std::vector<double> values(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        values[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    }
    return run_sweep(sweep_param_name(swept), values, options,
                     [&](double v) {
                         model::DimParams params = base;
                         if (swept == SweepParam::a0) {
                             params.a0 = v;
                         } else {
                             params.c3 = v;
                         }
                         return std::make_pair(params, m);
                     });
}

SweepResult order_sweep(const model::DimParams& base, const std::vector<double>& m_values,
                        const SweepOptions& options) {
    if (m_values.empty()) {
        throw fode::ConfigError("order_sweep: empty order list");
    }
    for (double m : m_values) {
        if (!(m > 0.0) || m > 1.0) {
            throw fode::ConfigError("order_sweep: every order must lie in (0, 1]");
        }
    }
    return run_sweep("m", m_values, options,
                     [&](double m) { return std::make_pair(base, m); });
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    std::size_t max_peaks = 0;
    for (const auto& pt : result.points) {
        max_peaks = std::max(max_peaks, pt.peaks.size());
    }
    out << "swept_value,attractor_label,n_clusters";
    for (std::size_t i = 0; i < max_peaks; ++i) {
        out << ",peak_" << (i + 1);
    }
    out << '\n';
    out << std::setprecision(12);
    for (const auto& pt : result.points) {
        out << pt.value << ',' << pt.label.name() << ',';
        if (pt.label.type != AttractorLabel::Type::diverged) {
            out << pt.peaks.size();
        }
        for (std::size_t i = 0; i < max_peaks; ++i) {
            out << ',';
            if (i < pt.peaks.size()) {
                out << pt.peaks[i];
            }
        }
        out << '\n';
    }
}

const char* sweep_param_name(SweepParam p) {
    return p == SweepParam::a0 ? "a0" : "c3";
}

} // namespace fodechain::scan

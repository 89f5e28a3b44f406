#include "fodechain/fode.hpp"

#include "fodechain/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace fodechain::fode {

namespace {
constexpr double kDivergenceBound = 1e8;
} // namespace

void FodeProblem::validate() const {
    if (!(order > 0.0) || order > 1.0 || !std::isfinite(order)) {
        throw ConfigError("FodeProblem: order must lie in (0, 1], got " + std::to_string(order));
    }
    if (dimension == 0) {
        throw ConfigError("FodeProblem: dimension must be positive");
    }
    if (!rhs) {
        throw ConfigError("FodeProblem: rhs is not set");
    }
    if (initial_state.size() != dimension) {
        throw ConfigError("FodeProblem: initial_state has " +
                          std::to_string(initial_state.size()) + " components, expected " +
                          std::to_string(dimension));
    }
    for (double v : initial_state) {
        if (!std::isfinite(v)) {
            throw ConfigError("FodeProblem: initial_state must be finite");
        }
    }
    if (!std::isfinite(t0) || !std::isfinite(t_final) || !(t_final > t0)) {
        throw ConfigError("FodeProblem: require t_final > t0");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ConfigError("FodeProblem: step must be positive");
    }
    if (step > t_final - t0) {
        throw ConfigError("FodeProblem: step exceeds the integration interval");
    }
}

void MemoryPolicy::validate() const {
    if (mode == Mode::truncated && (!(window_length > 0.0) || !std::isfinite(window_length))) {
        throw ConfigError("MemoryPolicy: truncated mode needs window_length > 0");
    }
}

namespace detail {

std::vector<double> predictor_weights(double m, double h, std::size_t n) {
    const double hm_over_m = std::pow(h, m) / m;
    std::vector<double> w(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const double k = static_cast<double>(n - j);
        w[j] = hm_over_m * (std::pow(k + 1.0, m) - std::pow(k, m));
    }
    return w;
}

} // namespace detail

Trajectory integrate_pece(const FodeProblem& problem, const MemoryPolicy& policy) {
    problem.validate();
    policy.validate();

    const double m = problem.order;
    const double h = problem.step;
    const std::size_t dim = problem.dimension;
    const auto n_steps =
        static_cast<std::size_t>(std::floor((problem.t_final - problem.t0) / h + 1e-9));

    // lag-indexed weights: predictor c[k] = (k+1)^m - k^m applies to lag
    // k = n - j; corrector d[k] = (k+2)^{m+1} + k^{m+1} - 2 (k+1)^{m+1}.
    std::vector<double> pow_m(n_steps + 3), pow_m1(n_steps + 3);
    for (std::size_t k = 0; k < pow_m.size(); ++k) {
        const auto kd = static_cast<double>(k);
        pow_m[k] = std::pow(kd, m);
        pow_m1[k] = std::pow(kd, m + 1.0);
    }
    // stored reversed, cw_rev[n_steps - k] = c[k], so that the per-step
    // history sweep reads both weight and f streams in ascending order
    std::vector<double> cw_rev(n_steps + 1), dw_rev(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        cw_rev[n_steps - k] = pow_m[k + 1] - pow_m[k];
        dw_rev[n_steps - k] = pow_m1[k + 2] + pow_m1[k] - 2.0 * pow_m1[k + 1];
    }

    const double hm = std::pow(h, m);
    const double pred_factor = hm / specfun::gamma(m + 1.0);
    const double corr_factor = hm / specfun::gamma(m + 2.0);

    // history of f evaluated on corrected states, one contiguous array per
    // component so the O(N^2) sweep stays on a dense stream
    std::vector<std::vector<double>> fh(dim, std::vector<double>(n_steps + 1));

    Trajectory traj;
    traj.dimension = dim;
    traj.order_used = m;
    traj.times.resize(n_steps + 1);
    traj.states.resize((n_steps + 1) * dim);

    for (std::size_t c = 0; c < dim; ++c) {
        traj.states[c] = problem.initial_state[c];
    }
    traj.times[0] = problem.t0;

    std::vector<double> work(dim), pred(dim), fp(dim);
    problem.rhs(problem.t0, std::span<const double>(problem.initial_state), std::span<double>(work));
    for (std::size_t c = 0; c < dim; ++c) {
        if (!std::isfinite(work[c])) {
            throw DivergenceError("integrate_pece: rhs non-finite at initial state", problem.t0);
        }
        fh[c][0] = work[c];
    }

    // history window in steps; j = 0 is always retained separately
    std::size_t window_steps = n_steps + 1;
    if (policy.mode == MemoryPolicy::Mode::truncated) {
        window_steps = static_cast<std::size_t>(std::floor(policy.window_length / h + 1e-9));
    }

    std::vector<double> sum_p(dim), sum_c(dim);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t_next = problem.t0 + static_cast<double>(n + 1) * h;
        const double last_valid = traj.times[n];

        // t_{n+1} - t_j <= window  <=>  j >= n + 1 - window_steps
        std::size_t j_min = 1;
        if (n + 1 > window_steps && n + 1 - window_steps > 1) {
            j_min = n + 1 - window_steps;
        }

        const double a0w = pow_m1[n] - (static_cast<double>(n) - m) * pow_m[n + 1];
        const std::size_t off = n_steps - n; // cw_rev[off + j] == c[n - j]
        const double* cwp = cw_rev.data() + off;
        const double* dwp = dw_rev.data() + off;
        for (std::size_t c = 0; c < dim; ++c) {
            const double* f = fh[c].data();
            double sp = cwp[0] * f[0];
            double sc = a0w * f[0];
            for (std::size_t j = j_min; j <= n; ++j) {
                sp += cwp[j] * f[j];
                sc += dwp[j] * f[j];
            }
            sum_p[c] = sp;
            sum_c[c] = sc;
        }

        for (std::size_t c = 0; c < dim; ++c) {
            pred[c] = problem.initial_state[c] + pred_factor * sum_p[c];
            if (!std::isfinite(pred[c]) || std::abs(pred[c]) > kDivergenceBound) {
                throw DivergenceError("integrate_pece: predictor diverged at t = " +
                                          std::to_string(t_next),
                                      last_valid);
            }
        }
        problem.rhs(t_next, std::span<const double>(pred), std::span<double>(fp));

        double* row = traj.states.data() + (n + 1) * dim;
        for (std::size_t c = 0; c < dim; ++c) {
            row[c] = problem.initial_state[c] + corr_factor * (fp[c] + sum_c[c]);
            if (!std::isfinite(row[c]) || std::abs(row[c]) > kDivergenceBound) {
                throw DivergenceError("integrate_pece: state diverged at t = " +
                                          std::to_string(t_next),
                                      last_valid);
            }
        }
        problem.rhs(t_next, std::span<const double>(row, dim), std::span<double>(work));
        for (std::size_t c = 0; c < dim; ++c) {
            if (!std::isfinite(work[c])) {
                throw DivergenceError("integrate_pece: rhs non-finite at t = " +
                                          std::to_string(t_next),
                                      last_valid);
            }
            fh[c][n + 1] = work[c];
        }
        traj.times[n + 1] = t_next;
        ++traj.steps_accepted;
    }
    return traj;
}

ConvergenceStudy convergence_study(const FodeProblem& problem,
                                   const std::function<std::vector<double>(double)>& exact,
                                   std::span<const double> step_sequence) {
    if (step_sequence.size() < 3) {
        throw ConfigError("estimate_convergence_order: need at least 3 step sizes");
    }
    for (std::size_t i = 0; i + 1 < step_sequence.size(); ++i) {
        if (!(step_sequence[i] > 0.0) ||
            std::abs(step_sequence[i + 1] - 0.5 * step_sequence[i]) > 1e-12 * step_sequence[i]) {
            throw ConfigError("estimate_convergence_order: each step must halve the previous");
        }
    }

    const double t_cut = problem.t0 + 0.2 * (problem.t_final - problem.t0);
    ConvergenceStudy study;
    std::vector<double> log_h, log_err;
    for (double h : step_sequence) {
        FodeProblem run = problem;
        run.step = h;
        const Trajectory traj = integrate_pece(run);
        double err = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            if (traj.times[i] < t_cut) {
                continue;
            }
            const std::vector<double> ref = exact(traj.times[i]);
            for (std::size_t c = 0; c < traj.dimension; ++c) {
                err = std::max(err, std::abs(traj.state(i, c) - ref[c]));
            }
        }
        if (!(err > 0.0)) {
            throw DegenerateFitError(
                "estimate_convergence_order: zero error at h = " + std::to_string(h) +
                ", log-log fit undefined");
        }
        study.steps.push_back(h);
        study.errors.push_back(err);
        log_h.push_back(std::log(h));
        log_err.push_back(std::log(err));
    }

    const auto n = static_cast<double>(log_h.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        sx += log_h[i];
        sy += log_err[i];
        sxx += log_h[i] * log_h[i];
        sxy += log_h[i] * log_err[i];
    }
    study.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return study;
}

double estimate_convergence_order(const FodeProblem& problem,
                                  const std::function<std::vector<double>(double)>& exact,
                                  std::span<const double> step_sequence) {
    return convergence_study(problem, exact, step_sequence).slope;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << 't';
    for (std::size_t c = 0; c < traj.dimension; ++c) {
        out << ",x" << (c + 1);
    }
    out << '\n';
    out << std::setprecision(12);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << traj.times[i];
        for (std::size_t c = 0; c < traj.dimension; ++c) {
            out << ',' << traj.state(i, c);
        }
        out << '\n';
    }
}

} // namespace fodechain::fode

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace fodechain::fode {

/// Invalid problem or policy configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Integration hit a non-finite or out-of-range state.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, double last_valid_time)
        : std::runtime_error(what), last_valid_time_(last_valid_time) {}

    double last_valid_time() const { return last_valid_time_; }

private:
    double last_valid_time_;
};

/// Convergence-order fit is undefined (some error is exactly zero).
class DegenerateFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// f(t, y, dy): write the derivative of y at time t into dy.
using Rhs = std::function<void(double, std::span<const double>, std::span<double>)>;

/// Caputo initial value problem D^m y = f(t, y), y(t0) = y0, on a uniform
/// grid of spacing `step` over [t0, t_final].
struct FodeProblem {
    double order = 1.0;      // m in (0, 1]
    std::size_t dimension = 0;
    Rhs rhs;
    std::vector<double> initial_state;
    double t0 = 0.0;
    double t_final = 0.0;
    double step = 0.05;      // paper default

    void validate() const;   // throws ConfigError
};

/// History handling for the O(N^2) memory term. `truncated` keeps only
/// f-values within window_length time units of the target point, except
/// the j = 0 weight which is always retained.
struct MemoryPolicy {
    enum class Mode { full, truncated };

    Mode mode = Mode::full;
    double window_length = 0.0; // > 0 when truncated

    static MemoryPolicy full() { return {}; }
    static MemoryPolicy truncated(double window) {
        return {Mode::truncated, window};
    }

    void validate() const;
};

/// Discrete solution on the uniform grid. States are stored row-major,
/// one row of `dimension` components per grid point.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> states;
    std::size_t dimension = 0;
    double order_used = 1.0;
    std::size_t steps_accepted = 0;

    std::size_t size() const { return times.size(); }
    std::span<const double> state(std::size_t i) const {
        return {states.data() + i * dimension, dimension};
    }
    double state(std::size_t i, std::size_t comp) const {
        return states[i * dimension + comp];
    }
};

/// Adams predictor-corrector (PECE) for the Caputo problem.
///
/// Per step n -> n+1 on t_j = t0 + j h:
///   predictor  y^P_{n+1} = y0 + (1/Gamma(m)) sum_j b_{j,n+1} f_j,
///              b_{j,n+1} = (h^m/m) [(n+1-j)^m - (n-j)^m]
///   corrector  y_{n+1} = y0 + (h^m/Gamma(m+2)) [f(t_{n+1}, y^P) + sum_j a_{j,n+1} f_j],
///              a_{0,n+1} = n^{m+1} - (n-m)(n+1)^m
///              a_{j,n+1} = (n-j+2)^{m+1} + (n-j)^{m+1} - 2(n-j+1)^{m+1},  1 <= j <= n
/// with one corrector pass and the history holding f of the corrected states.
/// Aborts with DivergenceError when a state component is non-finite or
/// exceeds 1e8 in magnitude.
Trajectory integrate_pece(const FodeProblem& problem,
                          const MemoryPolicy& policy = MemoryPolicy::full());

struct ConvergenceStudy {
    std::vector<double> steps;
    std::vector<double> errors; // sup-norm error per step size
    double slope = 0.0;         // least-squares slope of log err vs log h
};

/// Error-vs-step study over step_sequence (>= 3 entries, each half the
/// previous). The error per run is the sup over grid points in the
/// trailing 80% of the horizon (t >= t0 + 0.2 (t_final - t0)): the
/// fractional scheme has a known startup layer at t0 whose error does not
/// reflect the asymptotic order. Throws DegenerateFitError when an error
/// vanishes (log undefined).
ConvergenceStudy convergence_study(const FodeProblem& problem,
                                   const std::function<std::vector<double>(double)>& exact,
                                   std::span<const double> step_sequence);

/// The slope of the study above.
double estimate_convergence_order(const FodeProblem& problem,
                                  const std::function<std::vector<double>(double)>& exact,
                                  std::span<const double> step_sequence);

/// CSV export: header `t,x1..xn`, one row per grid point, >= 10 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

namespace detail {
/// Predictor weights b_{j,n+1}, j = 0..n, exposed for the telescoping test.
std::vector<double> predictor_weights(double m, double h, std::size_t n);
} // namespace detail

} // namespace fodechain::fode

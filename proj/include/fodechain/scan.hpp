#pragma once

#include "fodechain/fode.hpp"
#include "fodechain/model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fodechain::scan {

/// One trajectory-level experiment on the dimensional system.
struct SimulationSpec {
    model::DimParams params;
    double order = 1.0;
    model::State initial_state{1.2, 1.2, 1.2}; // paper initial condition
    double t_final = 2000.0;
    double step = 0.05;
    double transient_fraction = 0.7;
    fode::MemoryPolicy memory = fode::MemoryPolicy::full();

    void validate() const;
};

struct MonitorReport {
    enum class Kind { negativity, outside_omega };

    struct Violation {
        Kind kind;
        std::size_t index = 0;
        double time = 0.0;
        int component = 0; // 0 = x, 1 = y, 2 = z
        double value = 0.0;
    };

    std::vector<Violation> violations;
    bool omega_applicable = false; // Theorem-2 hypothesis held, region was checked

    bool negativity_clean() const;
};

struct SimulationResult {
    fode::Trajectory trajectory;
    MonitorReport monitor;
};

struct AttractorLabel {
    enum class Type { fixed_point, periodic, aperiodic, diverged };

    Type type = Type::fixed_point;
    int period = 0; // cluster count for periodic labels

    std::string name() const; // "fixed-point", "periodic(2)", "aperiodic", "diverged"
    bool operator==(const AttractorLabel&) const = default;
};

struct SweepPoint {
    double value = 0.0;
    AttractorLabel label;
    std::vector<double> peaks;
    model::State final_state;
    std::string error; // divergence message, empty on success
};

struct SweepResult {
    std::string swept_name;
    std::vector<double> values;
    std::vector<SweepPoint> points;
};

enum class SweepParam { a0, c3 };

/// Shared sweep settings; the defaults are the declared reproduction
/// recipe (t_final 2000, h 0.05, transient 0.7, cluster_tol 1e-3 in
/// dimensional X units, full memory).
struct SweepOptions {
    model::State initial_state{1.2, 1.2, 1.2};
    double t_final = 2000.0;
    double step = 0.05;
    double transient_fraction = 0.7;
    double cluster_tol = 1e-3;
    std::size_t coordinate = 0; // peaks of the X population
    fode::MemoryPolicy memory = fode::MemoryPolicy::full();
    unsigned threads = 0; // 0 = hardware concurrency
};

/// Integrate the dimensional system with PECE and attach the runtime
/// invariant monitors.
SimulationResult simulate(const SimulationSpec& spec);

/// Non-negativity monitor (component < -1e-9) over the whole trajectory,
/// plus — only when boundedness_check is satisfied — the post-transient
/// check that nondimensionalized states stay inside the attracting region
/// inflated by 5%. The spec leaves the post-transient cutoff to the
/// caller; it defaults to the scan transient fraction.
MonitorReport monitor_invariants(const fode::Trajectory& traj, const model::DimParams& p,
                                 double transient_fraction = 0.7);

/// Strict three-point local maxima of one coordinate over the
/// post-transient window, agglomeratively clustered (single linkage on
/// sorted values, absolute gap cluster_tol); returns cluster means,
/// ascending. Requires >= 100 post-transient samples.
std::vector<double> attractor_peaks(const fode::Trajectory& traj, std::size_t coordinate,
                                    double transient_fraction, double cluster_tol);

/// fixed-point when there are no peak clusters or the final-window
/// variance is below 1e-8; periodic(k) for k <= 8 clusters; aperiodic
/// beyond that.
AttractorLabel classify_attractor(const std::vector<double>& peaks,
                                  double final_window_variance);

/// Variance of one coordinate over the trailing `window_samples` grid
/// points (a short terminal window: it separates a state that has stopped
/// moving from one still orbiting, which a long window cannot do for the
/// slowly drifting tails of fractional runs).
double final_window_variance(const fode::Trajectory& traj, std::size_t coordinate,
                             std::size_t window_samples = 100);

/// Sweep a dimensional parameter over n_points equally spaced values at
/// fixed order m. Points are independent simulations (no state carry-over)
/// and run in parallel; per-point divergence is recorded in that point's
/// record and the sweep continues. A truncated-memory policy is accepted
/// only if a full-memory spot check at three sweep points reproduces the
/// same labels; otherwise the sweep falls back to full memory.
SweepResult bifurcation_sweep(const model::DimParams& base, SweepParam swept, double lo,
                              double hi, int n_points, double m,
                              const SweepOptions& options = {});

/// Same record structure with the fractional order as the swept quantity.
SweepResult order_sweep(const model::DimParams& base, const std::vector<double>& m_values,
                        const SweepOptions& options = {});

/// CSV: swept_value, attractor_label, n_clusters, peak_1..peak_k (rows
/// padded to the widest point).
void write_sweep_csv(std::ostream& out, const SweepResult& result);

const char* sweep_param_name(SweepParam p);

} // namespace fodechain::scan

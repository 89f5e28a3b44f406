#include "fodechain/scan.hpp"

#include "example_params.hpp"
#include "fodechain/equilibria.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace fodechain;
using Catch::Approx;

namespace {

fode::Trajectory synthetic(const std::vector<double>& values, double h = 0.05) {
    fode::Trajectory traj;
    traj.dimension = 1;
    traj.states = values;
    traj.times.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        traj.times[i] = h * static_cast<double>(i);
    }
    traj.order_used = 1.0;
    traj.steps_accepted = values.empty() ? 0 : values.size() - 1;
    return traj;
}

model::State dim_interior(const model::DimParams& p) {
    for (const auto& e : equilibria::find_equilibria(model::nondimensionalize(p), &p)) {
        if (e.kind == equilibria::Kind::interior) {
            return *e.coords_dim;
        }
    }
    FAIL("no interior equilibrium");
    return {};
}

} // namespace

TEST_CASE("peaks of a constant trajectory") {
    const fode::Trajectory traj = synthetic(std::vector<double>(400, 2.5));
    CHECK(scan::attractor_peaks(traj, 0, 0.5, 1e-3).empty());
}

TEST_CASE("peaks of 2 + sin(t)") {
    std::vector<double> values;
    for (int i = 0; i <= 8000; ++i) {
        values.push_back(2.0 + std::sin(0.05 * i));
    }
    const auto peaks = scan::attractor_peaks(synthetic(values), 0, 0.3, 1e-3);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0] == Approx(3.0).margin(1e-3));
}

TEST_CASE("peaks of an alternating-height signal") {
    // triangle bursts with tops 3, 4, 3, 4, ...
    std::vector<double> values;
    for (int block = 0; block < 60; ++block) {
        const double top = block % 2 == 0 ? 3.0 : 4.0;
        for (int i = 0; i < 10; ++i) {
            values.push_back(top * static_cast<double>(i) / 10.0);
        }
        for (int i = 10; i > 0; --i) {
            values.push_back(top * static_cast<double>(i) / 10.0);
        }
    }
    const auto peaks = scan::attractor_peaks(synthetic(values), 0, 0.0, 1e-3);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0] == Approx(3.0).margin(1e-9));
    CHECK(peaks[1] == Approx(4.0).margin(1e-9));
}

TEST_CASE("peak extraction rejects too-short windows") {
    const fode::Trajectory traj = synthetic(std::vector<double>(120, 1.0));
    CHECK_THROWS_AS(scan::attractor_peaks(traj, 0, 0.5, 1e-3), fode::ConfigError);
    CHECK_THROWS_AS(scan::attractor_peaks(traj, 3, 0.0, 1e-3), fode::ConfigError);
}

TEST_CASE("attractor classification rules") {
    CHECK(scan::classify_attractor({}, 1e-3).type == scan::AttractorLabel::Type::fixed_point);
    CHECK(scan::classify_attractor({1.0, 2.0}, 1e-12).type ==
          scan::AttractorLabel::Type::fixed_point);
    const auto periodic = scan::classify_attractor({1.0, 2.0}, 1.0);
    CHECK(periodic.type == scan::AttractorLabel::Type::periodic);
    CHECK(periodic.period == 2);
    CHECK(periodic.name() == "periodic(2)");
    const auto aperiodic =
        scan::classify_attractor({1, 2, 3, 4, 5, 6, 7, 8, 9}, 1.0);
    CHECK(aperiodic.type == scan::AttractorLabel::Type::aperiodic);
}

TEST_CASE("negativity monitor flags a planted violation") {
    fode::Trajectory traj;
    traj.dimension = 3;
    traj.states.assign(300 * 3, 0.5);
    traj.times.resize(300);
    for (std::size_t i = 0; i < 300; ++i) {
        traj.times[i] = 0.05 * static_cast<double>(i);
    }
    traj.states[137 * 3 + 1] = -1e-6;
    const auto report = scan::monitor_invariants(traj, testdata::example5());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == scan::MonitorReport::Kind::negativity);
    CHECK(report.violations[0].index == 137);
    CHECK(report.violations[0].component == 1);
    CHECK_FALSE(report.negativity_clean());
}

TEST_CASE("omega check is skipped when the hypothesis fails") {
    // example-5 parameters do not satisfy the boundedness condition
    fode::Trajectory traj;
    traj.dimension = 3;
    traj.states.assign(300 * 3, 0.5);
    traj.times.resize(300, 0.0);
    const auto report = scan::monitor_invariants(traj, testdata::example5());
    CHECK_FALSE(report.omega_applicable);
    CHECK(report.violations.empty());
}

TEST_CASE("omega check fires outside the region") {
    model::DimParams p = testdata::example5();
    p.v3 = 10.0; // boundedness condition now holds

    fode::Trajectory traj;
    traj.dimension = 3;
    const std::size_t n = 400;
    traj.times.resize(n);
    traj.states.assign(n * 3, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        traj.times[i] = 0.05 * static_cast<double>(i);
        traj.states[i * 3 + 0] = 0.5; // inside
        traj.states[i * 3 + 1] = 0.5;
        traj.states[i * 3 + 2] = i == n - 2 ? 1e7 : 0.5; // late spike far outside
    }
    const auto report = scan::monitor_invariants(traj, p, 0.5);
    CHECK(report.omega_applicable);
    REQUIRE_FALSE(report.violations.empty());
    bool omega_seen = false;
    for (const auto& v : report.violations) {
        omega_seen = omega_seen || v.kind == scan::MonitorReport::Kind::outside_omega;
    }
    CHECK(omega_seen);

    // the same states inside the region are clean
    for (std::size_t i = 0; i < n; ++i) {
        traj.states[i * 3 + 2] = 0.5;
    }
    CHECK(scan::monitor_invariants(traj, p, 0.5).violations.empty());
}

TEST_CASE("simulation from the origin stays at the origin") {
    scan::SimulationSpec spec;
    spec.params = testdata::example5();
    spec.order = 0.8;
    spec.initial_state = {0.0, 0.0, 0.0};
    spec.t_final = 20.0;
    const auto res = scan::simulate(spec);
    for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
        CHECK(res.trajectory.state(i, 0) == 0.0);
        CHECK(res.trajectory.state(i, 1) == 0.0);
        CHECK(res.trajectory.state(i, 2) == 0.0);
    }
    CHECK(res.monitor.negativity_clean());
}

TEST_CASE("reference run approaches the interior equilibrium") {
    // the fractional tail decays algebraically, so assert contraction and
    // monitor silence; the m = 1 run pins the tight tolerance
    const model::DimParams p = testdata::example5();
    const model::State estar = dim_interior(p);

    scan::SimulationSpec spec;
    spec.params = p;
    spec.order = 1.0;
    const auto res = scan::simulate(spec);
    const std::size_t last = res.trajectory.size() - 1;
    CHECK(std::abs(res.trajectory.state(last, 0) - estar.x) < 1e-2);
    CHECK(std::abs(res.trajectory.state(last, 1) - estar.y) < 1e-2);
    CHECK(std::abs(res.trajectory.state(last, 2) - estar.z) < 1e-2);
    CHECK(res.monitor.negativity_clean());

    spec.order = 0.85;
    const auto frac = scan::simulate(spec);
    const std::size_t mid = frac.trajectory.size() / 10;
    const std::size_t end = frac.trajectory.size() - 1;
    auto dist = [&](std::size_t i) {
        return std::max({std::abs(frac.trajectory.state(i, 0) - estar.x),
                         std::abs(frac.trajectory.state(i, 1) - estar.y),
                         std::abs(frac.trajectory.state(i, 2) - estar.z)});
    };
    CHECK(dist(end) < dist(mid) / 2.0); // contracting toward E*
    CHECK(dist(end) < 5e-2);
    CHECK(frac.monitor.negativity_clean());
}

TEST_CASE("sweeps are deterministic and point-independent") {
    scan::SweepOptions opt;
    opt.t_final = 150.0;
    opt.transient_fraction = 0.0; // short smoke runs
    const model::DimParams base = testdata::example2();

    const auto a = scan::bifurcation_sweep(base, scan::SweepParam::a0, 0.30, 0.40, 3, 1.0, opt);
    const auto b = scan::bifurcation_sweep(base, scan::SweepParam::a0, 0.30, 0.40, 3, 1.0, opt);
    REQUIRE(a.values == b.values);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        REQUIRE(a.points[i].label == b.points[i].label);
        REQUIRE(a.points[i].peaks == b.points[i].peaks);
        REQUIRE(a.points[i].final_state.x == b.points[i].final_state.x);
    }

    // a two-value sweep equals the union of two single-point sweeps
    const auto ab = scan::bifurcation_sweep(base, scan::SweepParam::a0, 0.30, 0.40, 2, 1.0, opt);
    scan::SweepOptions single = opt;
    for (std::size_t i = 0; i < 2; ++i) {
        model::DimParams p = base;
        p.a0 = ab.values[i];
        scan::SimulationSpec spec;
        spec.params = p;
        spec.order = 1.0;
        spec.t_final = opt.t_final;
        spec.transient_fraction = opt.transient_fraction;
        const auto res = scan::simulate(spec);
        const auto peaks = scan::attractor_peaks(res.trajectory, 0, opt.transient_fraction,
                                                 opt.cluster_tol);
        REQUIRE(ab.points[i].peaks == peaks);
        const std::size_t lastidx = res.trajectory.size() - 1;
        REQUIRE(ab.points[i].final_state.z == res.trajectory.state(lastidx, 2));
    }
}

TEST_CASE("degenerate sweep on a stable region") {
    scan::SweepOptions opt;
    const auto sweep = scan::bifurcation_sweep(testdata::example5(), scan::SweepParam::a0,
                                               0.46, 0.48, 2, 1.0, opt);
    REQUIRE(sweep.points.size() == 2);
    for (const auto& pt : sweep.points) {
        CHECK(pt.label.type == scan::AttractorLabel::Type::fixed_point);
        CHECK(pt.error.empty());
    }
}

TEST_CASE("order sweep of length one equals simulate plus classify") {
    scan::SweepOptions opt;
    opt.t_final = 200.0;
    const model::DimParams base = testdata::example5();
    const auto sweep = scan::order_sweep(base, {0.9}, opt);
    REQUIRE(sweep.points.size() == 1);
    CHECK(sweep.swept_name == "m");

    scan::SimulationSpec spec;
    spec.params = base;
    spec.order = 0.9;
    spec.t_final = opt.t_final;
    const auto res = scan::simulate(spec);
    const auto peaks =
        scan::attractor_peaks(res.trajectory, 0, opt.transient_fraction, opt.cluster_tol);
    const auto label = scan::classify_attractor(
        peaks, scan::final_window_variance(res.trajectory, 0));
    CHECK(sweep.points[0].label == label);
    CHECK(sweep.points[0].peaks == peaks);
}

TEST_CASE("per-point divergence is recorded and the sweep continues") {
    // an absurd growth rate drives the integration over the guard
    model::DimParams base = testdata::example2();
    scan::SweepOptions opt;
    opt.t_final = 400.0;
    const auto sweep =
        scan::bifurcation_sweep(base, scan::SweepParam::c3, 0.047, 80.0, 3, 1.0, opt);
    REQUIRE(sweep.points.size() == 3);
    CHECK(sweep.points[0].error.empty());
    bool diverged = false;
    for (const auto& pt : sweep.points) {
        if (pt.label.type == scan::AttractorLabel::Type::diverged) {
            diverged = true;
            CHECK_FALSE(pt.error.empty());
        }
    }
    CHECK(diverged);
}

TEST_CASE("truncated sweep falls back to full memory when labels differ") {
    scan::SweepOptions opt;
    opt.t_final = 500.0;
    opt.memory = fode::MemoryPolicy::truncated(499.0); // nearly full window
    const auto trunc = scan::order_sweep(testdata::example5(), {0.9, 0.95}, opt);
    opt.memory = fode::MemoryPolicy::full();
    const auto full = scan::order_sweep(testdata::example5(), {0.9, 0.95}, opt);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(trunc.points[i].label == full.points[i].label);
    }
}

TEST_CASE("sweep validation") {
    scan::SweepOptions opt;
    CHECK_THROWS_AS(scan::bifurcation_sweep(testdata::example2(), scan::SweepParam::a0, 0.5,
                                            0.3, 10, 1.0, opt),
                    fode::ConfigError);
    CHECK_THROWS_AS(scan::bifurcation_sweep(testdata::example2(), scan::SweepParam::a0, 0.3,
                                            0.5, 1, 1.0, opt),
                    fode::ConfigError);
    CHECK_THROWS_AS(scan::order_sweep(testdata::example2(), {}, opt), fode::ConfigError);
    CHECK_THROWS_AS(scan::order_sweep(testdata::example2(), {0.5, 1.5}, opt),
                    fode::ConfigError);
}

TEST_CASE("sweep CSV layout") {
    scan::SweepResult result;
    result.swept_name = "a0";
    result.values = {0.3, 0.4};
    scan::SweepPoint p1;
    p1.value = 0.3;
    p1.label = {scan::AttractorLabel::Type::periodic, 2};
    p1.peaks = {1.5, 2.5};
    scan::SweepPoint p2;
    p2.value = 0.4;
    p2.label = {scan::AttractorLabel::Type::fixed_point, 0};
    result.points = {p1, p2};

    std::ostringstream out;
    scan::write_sweep_csv(out, result);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "swept_value,attractor_label,n_clusters,peak_1,peak_2");
    std::getline(in, line);
    CHECK(line == "0.3,periodic(2),2,1.5,2.5");
    std::getline(in, line);
    CHECK(line == "0.4,fixed-point,0,,"); // padded ragged row
}

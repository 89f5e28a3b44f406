#include "fodechain/equilibria.hpp"

#include "fodechain/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace fodechain::equilibria {
namespace {

constexpr double kRootEps = 1e-12;

Equilibrium make(Kind kind, const model::State& coords, const model::DimParams* dim) {
    Equilibrium e;
    e.kind = kind;
    e.coords_nondim = coords;
    if (dim != nullptr) {
        e.coords_dim = model::state_to_dim(*dim, coords);
    }
    return e;
}

} // namespace

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::trivial: return "trivial";
        case Kind::axial: return "axial";
        case Kind::planar: return "planar";
        case Kind::interior: return "interior";
    }
    return "?";
}

double interior_y(const model::NondimParams& q) {
    return q.q / q.p - q.r;
}

std::vector<double> interior_x_roots(const model::NondimParams& q, double y_star) {
    const cubic::CubicRoots sol = cubic::solve_monic(-1.0, q.a, q.s * y_star - q.a);
    std::vector<double> roots;
    for (const auto& root : sol.roots) {
        if (root.imag() != 0.0) {
            continue;
        }
        const double x = root.real();
        if (x > kRootEps && x < 1.0 - kRootEps) {
            roots.push_back(x);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double l, double r) { return std::abs(l - r) < kRootEps; }),
                roots.end());
    return roots;
}

double interior_z(const model::NondimParams& q, double x_star, double y_star) {
    return (-q.b + q.c * x_star / (q.a + x_star * x_star)) * (y_star + q.d);
}

std::vector<Equilibrium> find_equilibria(const model::NondimParams& q,
                                         const model::DimParams* dim) {
    q.validate();
    std::vector<Equilibrium> eqs;
    eqs.push_back(make(Kind::trivial, {0.0, 0.0, 0.0}, dim));
    eqs.push_back(make(Kind::axial, {1.0, 0.0, 0.0}, dim));

    // planar (x, y, 0): b x^2 - c x + a b = 0 and y = (1 - x)(a + x^2)/s.
    // General quadratic solve; the double-root case x = c/2b is subsumed.
    const double quad_disc = q.c * q.c - 4.0 * q.a * q.b * q.b;
    if (quad_disc >= 0.0) {
        const double sq = std::sqrt(quad_disc);
        const double x_plus = (q.c + sq) / (2.0 * q.b);
        const double x_minus = q.a / x_plus; // root product is a; avoids cancellation
        for (double x_bar : {x_minus, x_plus}) {
            if (!(x_bar > kRootEps) || !(x_bar < 1.0 - kRootEps)) {
                continue;
            }
            const double y_bar = (1.0 - x_bar) * (q.a + x_bar * x_bar) / q.s;
            if (!(y_bar > 0.0)) {
                continue;
            }
            if (!eqs.empty() && eqs.back().kind == Kind::planar &&
                std::abs(eqs.back().coords_nondim.x - x_bar) < kRootEps) {
                continue; // double root
            }
            eqs.push_back(make(Kind::planar, {x_bar, y_bar, 0.0}, dim));
        }
    }

    // interior: y* = q/p - r, x* roots of the cubic in (0,1), z* from the
    // second equation. One record per feasible triple.
    const double y_star = interior_y(q);
    const double cond_y_value = y_star - q.a / q.s; // y* < a/s
    if (y_star > 0.0) {
        for (double x_star : interior_x_roots(q, y_star)) {
            const double z_star = interior_z(q, x_star, y_star);
            Equilibrium e = make(Kind::interior, {x_star, y_star, z_star}, dim);
            const double cond_b_value = q.b - q.c * x_star / (q.a + x_star * x_star);
            e.existence_report.push_back(
                {"y* - a/s", cond_y_value, cond_y_value < 0.0});
            e.existence_report.push_back(
                {"b - c x*/(a + x*^2)", cond_b_value, cond_b_value < 0.0});
            if (dim != nullptr) {
                const double cond_v3 = dim->v3 - dim->c3 * dim->d3;
                e.existence_report.push_back({"v3 - c3 d3", cond_v3, cond_v3 > 0.0});
            }
            e.existence_ok = z_star > 0.0;
            for (const auto& cond : e.existence_report) {
                e.existence_ok = e.existence_ok && cond.satisfied;
            }
            if (z_star > 0.0) {
                eqs.push_back(std::move(e));
            }
        }
    }
    return eqs;
}

void write_equilibria_csv(std::ostream& out, const std::vector<Equilibrium>& eqs) {
    out << "kind,x,y,z,X,Y,Z,existence_ok,y_star_minus_a_over_s,"
           "b_minus_cx_over_ax2,v3_minus_c3d3\n";
    out << std::setprecision(12);
    for (const auto& e : eqs) {
        out << kind_name(e.kind) << ',' << e.coords_nondim.x << ',' << e.coords_nondim.y << ','
            << e.coords_nondim.z << ',';
        if (e.coords_dim) {
            out << e.coords_dim->x << ',' << e.coords_dim->y << ',' << e.coords_dim->z;
        } else {
            out << ",,";
        }
        out << ',' << (e.existence_ok ? 1 : 0);
        for (std::size_t i = 0; i < 3; ++i) {
            out << ',';
            if (i < e.existence_report.size()) {
                out << e.existence_report[i].value;
            }
        }
        out << '\n';
    }
}

} // namespace fodechain::equilibria

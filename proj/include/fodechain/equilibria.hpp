#pragma once

#include "fodechain/model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fodechain::equilibria {

enum class Kind { trivial, axial, planar, interior };

const char* kind_name(Kind k);

struct ExistenceCondition {
    std::string name;
    double value = 0.0;
    bool satisfied = false;
};

struct Equilibrium {
    Kind kind = Kind::trivial;
    model::State coords_nondim;
    std::optional<model::State> coords_dim; // set when DimParams were supplied
    bool existence_ok = true;
    std::vector<ExistenceCondition> existence_report;
};

/// Interior intermediate-predator level y* = q/p - r. Non-feasible when <= 0.
double interior_y(const model::NondimParams& q);

/// Real roots of x^3 - x^2 + a x + (s y* - a) = 0 in the open interval
/// (0, 1), ascending. Closed-form solve plus one Newton polish; roots are
/// accepted in (eps, 1 - eps) with eps = 1e-12.
std::vector<double> interior_x_roots(const model::NondimParams& q, double y_star);

/// Interior top-predator level z* = (-b + c x*/(a + x*^2))(y* + d).
/// Non-feasible when <= 0.
double interior_z(const model::NondimParams& q, double x_star, double y_star);

/// All biologically feasible equilibria: E0 = (0,0,0) and E1 = (1,0,0)
/// always; every planar root of b x^2 - c x + a b = 0 with x in (0,1) and
/// y > 0; one interior equilibrium per feasible (x*, y*, z*) triple. The
/// cubic may yield up to three interior roots; all are returned.
std::vector<Equilibrium> find_equilibria(const model::NondimParams& q,
                                         const model::DimParams* dim = nullptr);

/// CSV: kind, nondim coords, dim coords (blank without DimParams),
/// existence flag and the three interior condition values.
void write_equilibria_csv(std::ostream& out, const std::vector<Equilibrium>& eqs);

} // namespace fodechain::equilibria

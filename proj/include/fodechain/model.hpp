#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>

namespace fodechain::model {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Population state (prey, intermediate predator, top predator).
/// Dimensional or nondimensional depending on context.
struct State {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Dimensional food-chain parameters. All strictly positive.
///
/// d0 is the prey-equation protection constant and d1 the predator-equation
/// one; the reference parameter sets always use d0 = d1 and the parameter
/// file format lets d0 default to d1.
struct DimParams {
    double a0 = 0.0; // prey growth rate
    double b0 = 0.0; // intra-specific competition
    double v0 = 0.0; // max per-capita rates
    double v1 = 0.0;
    double v2 = 0.0;
    double v3 = 0.0;
    double d0 = 0.0; // protection constant, prey equation
    double d1 = 0.0; // protection constant, predator equation
    double d2 = 0.0; // half-saturation constant
    double d3 = 0.0; // residual-loss constant
    double a1 = 0.0; // intermediate-predator death rate
    double c3 = 0.0; // top-predator sexual-reproduction rate

    void validate() const; // throws std::invalid_argument naming the field
};

/// Dimensionless model constants plus the auxiliary ratio beta = v1/a0
/// used by the boundedness and global-stability conditions.
struct NondimParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
    double s = 0.0;
    double beta = 0.0;

    void validate() const;
};

NondimParams nondimensionalize(const DimParams& p);

/// Right-hand side of the dimensional system:
///   dX = a0 X - b0 X^2 - v0 X Y / (d0 + X^2)
///   dY = -a1 Y + v1 X Y / (d1 + X^2) - v2 Y Z / (d2 + Y)
///   dZ = c3 Z^2 - v3 Z^2 / (d3 + Y)
State rhs_dimensional(const DimParams& p, const State& s);

/// Right-hand side of the nondimensional system:
///   dx = x(1 - x) - s x y / (x^2 + a)
///   dy = c x y / (x^2 + a) - b y - y z / (y + d)
///   dz = p z^2 - q z^2 / (y + r)
State rhs_nondimensional(const NondimParams& q, const State& s);

/// Analytic Jacobian of rhs_nondimensional at an arbitrary state.
Mat3 jacobian(const NondimParams& q, const State& s);

/// State transforms x = (b0/a0) X, y = (b0 v0 / a0^2) Y, z = (b0 v0 v2 / a0^3) Z.
State state_to_nondim(const DimParams& p, const State& dim_state);
State state_to_dim(const DimParams& p, const State& nondim_state);

/// Parse the flat key-value parameter format: one `name = value` per line,
/// `#` comments, keys exactly the DimParams field names. Unknown keys and
/// missing keys are errors, except d0 which defaults to d1.
DimParams parse_params(std::istream& in);
DimParams load_params_file(const std::filesystem::path& path);

} // namespace fodechain::model

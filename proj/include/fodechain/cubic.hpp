#pragma once

#include <array>
#include <complex>

namespace fodechain::cubic {

/// Roots of a monic cubic with real coefficients, plus its discriminant
/// D = [(r1-r2)(r1-r3)(r2-r3)]^2. D > 0: three distinct real roots;
/// D < 0: one real root and a complex-conjugate pair.
struct CubicRoots {
    std::array<std::complex<double>, 3> roots{};
    double discriminant = 0.0;
};

/// Solve x^3 + b x^2 + c x + d = 0 in closed form (trigonometric for the
/// three-real-root branch, Cardano otherwise), with one Newton polish on
/// each real root.
CubicRoots solve_monic(double b, double c, double d);

/// Discriminant of x^3 + b x^2 + c x + d via
/// 18 b c d + (b c)^2 - 4 d b^3 - 4 c^3 - 27 d^2.
double discriminant_monic(double b, double c, double d);

} // namespace fodechain::cubic

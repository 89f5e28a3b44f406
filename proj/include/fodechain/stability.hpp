#pragma once

#include "fodechain/equilibria.hpp"
#include "fodechain/model.hpp"

#include <array>
#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fodechain::stability {

enum class Verdict { stable, unstable, non_hyperbolic, inconclusive };
enum class Theorem4Case { i, ii, iii, iv, none };

const char* verdict_name(Verdict v);
const char* theorem4_case_name(Theorem4Case c);

/// Matignon test outcome. margins[i] = |arg xi_i| - m pi/2; margin_defined[i]
/// is false for a (numerically) zero eigenvalue, whose argument is undefined.
struct MatignonResult {
    std::array<std::complex<double>, 3> eigenvalues{};
    std::array<double, 3> margins{};
    std::array<bool, 3> margin_defined{};
    Verdict verdict = Verdict::inconclusive;
    bool has_unstable_direction = false; // some defined margin <= 0
};

/// Characteristic-cubic data for an interior equilibrium.
struct CharCoeffs {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

struct ClassifyResult {
    Theorem4Case theorem4_case = Theorem4Case::none;
    Verdict verdict = Verdict::inconclusive;
    CharCoeffs coeffs;
    double discriminant = 0.0;
    MatignonResult matignon;
    bool matignon_agrees = true; // cross-check between the two routes
    std::string warning;
};

/// Full per-equilibrium report.
struct StabilityReport {
    equilibria::Kind kind = equilibria::Kind::trivial;
    model::State coords_nondim;
    std::array<std::complex<double>, 3> eigenvalues{};
    std::array<double, 3> matignon_margins{};
    std::array<bool, 3> margin_defined{};
    Verdict verdict = Verdict::inconclusive;
    // interior equilibria only:
    std::optional<CharCoeffs> coeffs;
    std::optional<double> discriminant;
    std::optional<Theorem4Case> theorem4_case;
    std::string warning;
};

struct GlobalStabilityReport {
    double cond1 = 0.0;
    double cond2 = 0.0;
    double cond3 = 0.0;
    double alpha = 0.0;
    bool all_satisfied = false;
    double x_star_used = 0.0; // smallest feasible interior root when several exist
    double y_star_used = 0.0;
};

struct BoundednessReport {
    double lhs = 0.0; // beta + beta/(4b) + r
    double rhs = 0.0; // q/p
    bool satisfied = false;
    std::optional<double> bound_m;       // 1 / (4 (q - lhs p)), finite only when satisfied
    double omega_x = 1.0;                // x <= 1
    double omega_xy = 0.0;               // x + y/beta <= 1 + 1/(4b)
    std::optional<double> omega_xyz;     // x + y/beta + alpha z <= ..., needs bound_m
    double alpha = 0.0;                  // 1 / (b^2 lhs)
};

/// Eigenvalues of the Jacobian at an equilibrium, as roots of the monic
/// characteristic cubic (residual |F(xi)| below 1e-8 relative).
std::array<std::complex<double>, 3> eigenvalues_at(const model::NondimParams& q,
                                                   const equilibria::Equilibrium& e);

/// Eigenvalues of an arbitrary 3x3 real matrix via its characteristic cubic.
std::array<std::complex<double>, 3> eigenvalues_of(const model::Mat3& J);

/// Matignon criterion at order m: stable iff every eigenvalue is nonzero
/// with |arg| > m pi/2; any zero eigenvalue makes the point non-hyperbolic.
MatignonResult matignon_classify(const std::array<std::complex<double>, 3>& eigs, double m);

/// Closed-form (A1, A2, A3) of F(xi) = xi^3 + A1 xi^2 + A2 xi + A3 at an
/// interior equilibrium; matches the monic characteristic polynomial of the
/// Jacobian to 1e-8.
CharCoeffs characteristic_coeffs(const model::NondimParams& q,
                                 const equilibria::Equilibrium& e_interior);

/// D(F) = 18 A1 A2 A3 + (A1 A2)^2 - 4 A3 A1^3 - 4 A2^3 - 27 A3^2.
double discriminant(double a1, double a2, double a3);

/// Raw Theorem-4 hypothesis match on coefficients; first matching case of
///   (i)   D > 0, A1 > 0, A3 > 0, A1 A2 - A3 > 0          -> stable, any m
///   (ii)  D < 0, A1 >= 0, A2 >= 0, A3 > 0, m < 2/3       -> stable
///   (iii) D < 0, A1 < 0, A2 < 0, m > 2/3                 -> unstable
///   (iv)  D < 0, A1 > 0, A2 > 0, A1 A2 = A3 (rel 1e-9), m < 1 -> stable
/// or (none, inconclusive).
std::pair<Theorem4Case, Verdict> classify_theorem4(const CharCoeffs& coeffs, double m);

/// Theorem-4 classification of an interior equilibrium, cross-checked
/// against the Matignon eigenvalue test; a disagreement is reported in the
/// warning field, never silently resolved.
ClassifyResult classify_interior(const model::NondimParams& q,
                                 const equilibria::Equilibrium& e_interior, double m);

/// Lyapunov global-stability conditions (all three must be negative),
/// evaluated with beta = v1/a0 and the nondimensional interior (x*, y*).
/// Throws std::invalid_argument when no feasible interior equilibrium exists.
GlobalStabilityReport global_stability_check(const model::DimParams& p);

/// Dissipativity condition beta + beta/(4b) + r < q/p and the bounds of the
/// attracting region.
BoundednessReport boundedness_check(const model::DimParams& p);

/// Lipschitz constant of the nondimensional right-hand side on
/// max(|x|,|y|,|z|) <= M1: the maximum of the three bracketed expressions.
double lipschitz_constant(const model::NondimParams& q, double m1);

/// Report for one equilibrium (Matignon everywhere, Theorem 4 data when interior).
StabilityReport analyze(const model::NondimParams& q, const equilibria::Equilibrium& e,
                        double m);

/// CSV: one row per eigenvalue (kind, re, im, |arg|, margin, verdict).
void write_stability_csv(std::ostream& out, const std::vector<StabilityReport>& reports);

/// Human-readable block, one line per eigenvalue plus the Theorem-4 summary.
void write_stability_text(std::ostream& out, const std::vector<StabilityReport>& reports,
                          double m);

} // namespace fodechain::stability

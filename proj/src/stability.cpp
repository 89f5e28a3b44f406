#include "fodechain/stability.hpp"

#include "fodechain/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fodechain::stability {
namespace {

constexpr double kZeroEigTol = 1e-9;    // |xi| below this counts as a zero eigenvalue
constexpr double kCaseIvRelTol = 1e-9;  // relative tolerance for A1 A2 = A3

bool is_zero_eig(const std::complex<double>& xi, double scale) {
    return std::abs(xi) <= kZeroEigTol * std::max(1.0, scale);
}

void require_interior(const equilibria::Equilibrium& e, const char* who) {
    if (e.kind != equilibria::Kind::interior) {
        throw std::invalid_argument(std::string(who) + ": equilibrium must be interior");
    }
}

} // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::unstable: return "unstable";
        case Verdict::non_hyperbolic: return "non-hyperbolic";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* theorem4_case_name(Theorem4Case c) {
    switch (c) {
        case Theorem4Case::i: return "i";
        case Theorem4Case::ii: return "ii";
        case Theorem4Case::iii: return "iii";
        case Theorem4Case::iv: return "iv";
        case Theorem4Case::none: return "none";
    }
    return "?";
}

std::array<std::complex<double>, 3> eigenvalues_of(const model::Mat3& J) {
    // monic characteristic polynomial xi^3 + b xi^2 + c xi + d
    const double tr = J[0][0] + J[1][1] + J[2][2];
    const double m2 = (J[0][0] * J[1][1] - J[0][1] * J[1][0]) +
                      (J[0][0] * J[2][2] - J[0][2] * J[2][0]) +
                      (J[1][1] * J[2][2] - J[1][2] * J[2][1]);
    const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                       J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                       J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    return cubic::solve_monic(-tr, m2, -det).roots;
}

std::array<std::complex<double>, 3> eigenvalues_at(const model::NondimParams& q,
                                                   const equilibria::Equilibrium& e) {
    return eigenvalues_of(model::jacobian(q, e.coords_nondim));
}

MatignonResult matignon_classify(const std::array<std::complex<double>, 3>& eigs, double m) {
    if (!(m > 0.0) || m > 1.0) {
        throw std::invalid_argument("matignon_classify: order must lie in (0, 1]");
    }
    double scale = 0.0;
    for (const auto& xi : eigs) {
        scale = std::max(scale, std::abs(xi));
    }

    MatignonResult res;
    res.eigenvalues = eigs;
    const double threshold = m * M_PI / 2.0;
    bool any_zero = false;
    bool all_pass = true;
    for (std::size_t i = 0; i < 3; ++i) {
        if (is_zero_eig(eigs[i], scale)) {
            any_zero = true;
            res.margin_defined[i] = false;
            res.margins[i] = 0.0;
            continue;
        }
        res.margin_defined[i] = true;
        res.margins[i] = std::abs(std::arg(eigs[i])) - threshold;
        if (res.margins[i] <= 0.0) {
            all_pass = false;
            res.has_unstable_direction = true;
        }
    }
    if (any_zero) {
        res.verdict = Verdict::non_hyperbolic;
    } else {
        res.verdict = all_pass ? Verdict::stable : Verdict::unstable;
    }
    return res;
}

CharCoeffs characteristic_coeffs(const model::NondimParams& q,
                                 const equilibria::Equilibrium& e_interior) {
    require_interior(e_interior, "characteristic_coeffs");
    const double xs = e_interior.coords_nondim.x;
    const double ys = e_interior.coords_nondim.y;
    const double zs = e_interior.coords_nondim.z;
    const double ax2 = q.a + xs * xs;
    // closed forms use the equilibrium identities s y* = (1 - x*)(a + x*^2)
    // and c x*/(a + x*^2) - b = z*/(y* + d)
    const double g = (1.0 - xs) * (q.a - xs * xs) / ax2; // s y* (a - x*^2)/(a + x*^2)^2
    const double j11 = 1.0 - 2.0 * xs - g;
    const double j22 = ys * zs / ((ys + q.d) * (ys + q.d));
    const double cross = q.c * xs * (1.0 - xs) * (q.a - xs * xs) / (ax2 * ax2); // -j12 j21
    const double pyz = q.p * ys * zs * zs / ((ys + q.d) * (ys + q.r));          // -j23 j32

    CharCoeffs A;
    A.a1 = -j11 - j22;
    A.a2 = j11 * j22 + cross + pyz;
    A.a3 = -pyz * j11;
    return A;
}

double discriminant(double a1, double a2, double a3) {
    return cubic::discriminant_monic(a1, a2, a3);
}

std::pair<Theorem4Case, Verdict> classify_theorem4(const CharCoeffs& A, double m) {
    const double D = discriminant(A.a1, A.a2, A.a3);
    if (D > 0.0 && A.a1 > 0.0 && A.a3 > 0.0 && A.a1 * A.a2 - A.a3 > 0.0) {
        return {Theorem4Case::i, Verdict::stable};
    }
    if (D < 0.0 && A.a1 >= 0.0 && A.a2 >= 0.0 && A.a3 > 0.0 && m < 2.0 / 3.0) {
        return {Theorem4Case::ii, Verdict::stable};
    }
    if (D < 0.0 && A.a1 < 0.0 && A.a2 < 0.0 && m > 2.0 / 3.0) {
        return {Theorem4Case::iii, Verdict::unstable};
    }
    const double prod = A.a1 * A.a2;
    if (D < 0.0 && A.a1 > 0.0 && A.a2 > 0.0 && m < 1.0 &&
        std::abs(prod - A.a3) <= kCaseIvRelTol * std::max(std::abs(prod), std::abs(A.a3))) {
        return {Theorem4Case::iv, Verdict::stable};
    }
    return {Theorem4Case::none, Verdict::inconclusive};
}

ClassifyResult classify_interior(const model::NondimParams& q,
                                 const equilibria::Equilibrium& e_interior, double m) {
    require_interior(e_interior, "classify_interior");
    ClassifyResult res;
    res.coeffs = characteristic_coeffs(q, e_interior);
    res.discriminant = discriminant(res.coeffs.a1, res.coeffs.a2, res.coeffs.a3);
    std::tie(res.theorem4_case, res.verdict) = classify_theorem4(res.coeffs, m);
    res.matignon = matignon_classify(eigenvalues_at(q, e_interior), m);

    if (res.verdict == Verdict::inconclusive) {
        res.matignon_agrees = true; // nothing asserted, attach the raw verdict
    } else {
        res.matignon_agrees = res.verdict == res.matignon.verdict;
    }
    if (!res.matignon_agrees) {
        std::ostringstream msg;
        msg << "theorem-4 case " << theorem4_case_name(res.theorem4_case) << " says "
            << verdict_name(res.verdict) << " but the eigenvalue test says "
            << verdict_name(res.matignon.verdict) << " at m = " << m;
        res.warning = msg.str();
    }
    return res;
}

GlobalStabilityReport global_stability_check(const model::DimParams& p) {
    const model::NondimParams q = model::nondimensionalize(p);
    const auto eqs = equilibria::find_equilibria(q, &p);
    const equilibria::Equilibrium* interior = nullptr;
    for (const auto& e : eqs) {
        if (e.kind == equilibria::Kind::interior) {
            interior = &e;
            break; // smallest feasible x* when the cubic has several
        }
    }
    if (interior == nullptr) {
        throw std::invalid_argument("global_stability_check: no feasible interior equilibrium");
    }

    const double xs = interior->coords_nondim.x;
    const double ys = interior->coords_nondim.y;
    const double beta = q.beta;
    const double big = beta + beta / (4.0 * q.b) + q.r;

    GlobalStabilityReport rep;
    rep.x_star_used = xs;
    rep.y_star_used = ys;
    rep.alpha = 1.0 / (q.b * q.b * big);
    const double x2a = xs * xs + q.a;
    rep.cond1 = 2.0 * q.s * ys / (q.a * x2a) + q.s / (2.0 * q.a * q.a) - 1.0;
    rep.cond3 = q.q / (4.0 * q.b * q.r * rep.alpha * (q.q - q.p * big)) -
                x2a / (q.a * beta * (beta + beta / (4.0 * q.b) + q.d));
    rep.cond2 = (q.c * xs - q.b * x2a) / (q.a * beta * q.d) + q.s / (2.0 * q.a * q.a) +
                0.5 * rep.cond3;
    rep.all_satisfied = rep.cond1 < 0.0 && rep.cond2 < 0.0 && rep.cond3 < 0.0;
    return rep;
}

BoundednessReport boundedness_check(const model::DimParams& p) {
    const model::NondimParams q = model::nondimensionalize(p);
    BoundednessReport rep;
    rep.lhs = q.beta + q.beta / (4.0 * q.b) + q.r;
    rep.rhs = q.q / q.p;
    rep.satisfied = rep.lhs < rep.rhs;
    rep.alpha = 1.0 / (q.b * q.b * rep.lhs);
    rep.omega_x = 1.0;
    rep.omega_xy = 1.0 + 1.0 / (4.0 * q.b);
    if (rep.satisfied) {
        rep.bound_m = 1.0 / (4.0 * (q.q - rep.lhs * q.p));
        rep.omega_xyz = rep.omega_xy + *rep.bound_m / q.b;
    }
    return rep;
}

double lipschitz_constant(const model::NondimParams& q, double m1) {
    if (!(m1 > 0.0) || !std::isfinite(m1)) {
        throw std::invalid_argument("lipschitz_constant: M1 must be positive");
    }
    const double sc = q.s + q.c;
    const double e1 = 1.0 + 2.0 * m1 + m1 * sc / q.a + m1 * m1 * m1 * sc / (q.a * q.a);
    const double e2 = m1 * (sc / q.a + 1.0 / q.d) + q.b +
                      m1 * m1 * (m1 * sc / (q.a * q.a) + q.q / (q.r * q.r));
    const double e3 = m1 * (2.0 * q.p + 1.0 / q.d + 2.0 * q.q / q.r) +
                      m1 * m1 * (1.0 / (q.d * q.d) + 2.0 * q.q / (q.r * q.r));
    return std::max({e1, e2, e3});
}

StabilityReport analyze(const model::NondimParams& q, const equilibria::Equilibrium& e,
                        double m) {
    StabilityReport rep;
    rep.kind = e.kind;
    rep.coords_nondim = e.coords_nondim;
    if (e.kind == equilibria::Kind::interior) {
        const ClassifyResult cls = classify_interior(q, e, m);
        rep.eigenvalues = cls.matignon.eigenvalues;
        rep.matignon_margins = cls.matignon.margins;
        rep.margin_defined = cls.matignon.margin_defined;
        rep.coeffs = cls.coeffs;
        rep.discriminant = cls.discriminant;
        rep.theorem4_case = cls.theorem4_case;
        rep.warning = cls.warning;
        rep.verdict = cls.verdict == Verdict::inconclusive ? cls.matignon.verdict : cls.verdict;
    } else {
        const MatignonResult mat = matignon_classify(eigenvalues_at(q, e), m);
        rep.eigenvalues = mat.eigenvalues;
        rep.matignon_margins = mat.margins;
        rep.margin_defined = mat.margin_defined;
        rep.verdict = mat.verdict;
    }
    return rep;
}

void write_stability_csv(std::ostream& out, const std::vector<StabilityReport>& reports) {
    out << "kind,x,y,z,eig_re,eig_im,abs_arg,margin,verdict\n";
    out << std::setprecision(12);
    for (const auto& rep : reports) {
        for (std::size_t i = 0; i < 3; ++i) {
            out << equilibria::kind_name(rep.kind) << ',' << rep.coords_nondim.x << ','
                << rep.coords_nondim.y << ',' << rep.coords_nondim.z << ','
                << rep.eigenvalues[i].real() << ',' << rep.eigenvalues[i].imag() << ',';
            if (rep.margin_defined[i]) {
                out << std::abs(std::arg(rep.eigenvalues[i])) << ',' << rep.matignon_margins[i];
            } else {
                out << "undefined,";
            }
            out << ',' << verdict_name(rep.verdict) << '\n';
        }
    }
}

void write_stability_text(std::ostream& out, const std::vector<StabilityReport>& reports,
                          double m) {
    out << "stability analysis at order m = " << m << "\n";
    out << std::setprecision(6) << std::fixed;
    for (const auto& rep : reports) {
        out << "\n" << equilibria::kind_name(rep.kind) << " equilibrium ("
            << rep.coords_nondim.x << ", " << rep.coords_nondim.y << ", " << rep.coords_nondim.z
            << "): " << verdict_name(rep.verdict) << "\n";
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& xi = rep.eigenvalues[i];
            out << "  xi_" << (i + 1) << " = " << xi.real();
            if (xi.imag() != 0.0) {
                out << (xi.imag() > 0 ? " + " : " - ") << std::abs(xi.imag()) << "i";
            }
            if (rep.margin_defined[i]) {
                out << "  |arg| = " << std::abs(std::arg(xi))
                    << "  margin = " << rep.matignon_margins[i];
            } else {
                out << "  |arg| undefined (zero eigenvalue)";
            }
            out << "\n";
        }
        if (rep.coeffs) {
            out << "  A1 = " << std::setprecision(4) << rep.coeffs->a1
                << "  A2 = " << rep.coeffs->a2 << "  A3 = " << rep.coeffs->a3
                << "  D(F) = " << *rep.discriminant << std::setprecision(6) << "\n";
            out << "  theorem-4 case " << theorem4_case_name(*rep.theorem4_case) << " -> "
                << verdict_name(rep.verdict) << "\n";
        }
        if (!rep.warning.empty()) {
            out << "  warning: " << rep.warning << "\n";
        }
    }
}

} // namespace fodechain::stability

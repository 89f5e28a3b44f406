#include "fodechain/cubic.hpp"

#include <algorithm>
#include <cmath>

namespace fodechain::cubic {
namespace {

double polish_real_root(double b, double c, double d, double x) {
    // one Newton step; helps the closed form near double roots
    const double fx = ((x + b) * x + c) * x + d;
    const double dfx = (3.0 * x + 2.0 * b) * x + c;
    if (dfx != 0.0 && std::isfinite(fx / dfx)) {
        const double step = fx / dfx;
        if (std::abs(step) < 1.0) {
            return x - step;
        }
    }
    return x;
}

} // namespace

double discriminant_monic(double b, double c, double d) {
    return 18.0 * b * c * d + (b * c) * (b * c) - 4.0 * d * b * b * b - 4.0 * c * c * c -
           27.0 * d * d;
}

CubicRoots solve_monic(double b, double c, double d) {
    CubicRoots out;
    out.discriminant = discriminant_monic(b, c, d);

    // depressed form t^3 + p t + q, x = t - b/3
    const double shift = b / 3.0;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

    if (p == 0.0 && q == 0.0) {
        out.roots = {std::complex<double>(-shift), std::complex<double>(-shift),
                     std::complex<double>(-shift)};
        return out;
    }

    const double delta = -4.0 * p * p * p - 27.0 * q * q; // discriminant of the depressed cubic

    if (delta >= 0.0) {
        // three real roots (possibly repeated): trigonometric method
        const double rad = std::sqrt(std::max(-p / 3.0, 0.0));
        double cos_arg = 0.0;
        if (rad > 0.0) {
            cos_arg = std::clamp(3.0 * q / (2.0 * p) / rad, -1.0, 1.0);
        }
        const double theta = std::acos(cos_arg);
        for (int k = 0; k < 3; ++k) {
            const double t = 2.0 * rad * std::cos(theta / 3.0 - 2.0 * M_PI * k / 3.0);
            double x = t - shift;
            x = polish_real_root(b, c, d, x);
            out.roots[k] = x;
        }
        std::sort(out.roots.begin(), out.roots.end(),
                  [](const auto& l, const auto& r) { return l.real() < r.real(); });
        return out;
    }

    // one real root via the cancellation-safe Cardano form
    const double half_q = q / 2.0;
    const double disc_term = std::sqrt(half_q * half_q + p * p * p / 27.0);
    const double u = -half_q - (half_q >= 0.0 ? disc_term : -disc_term);
    const double cbrt_u = std::cbrt(u);
    double t1 = 0.0;
    if (cbrt_u != 0.0) {
        t1 = cbrt_u - p / (3.0 * cbrt_u);
    }
    double x1 = polish_real_root(b, c, d, t1 - shift);
    x1 = polish_real_root(b, c, d, x1);

    // deflate: x^3 + b x^2 + c x + d = (x - x1)(x^2 + b1 x + b0)
    const double b1 = b + x1;
    const double b0 = c + x1 * b1;
    const double qd = b1 * b1 - 4.0 * b0;
    const double re = -b1 / 2.0;
    const double im = std::sqrt(std::max(-qd, 0.0)) / 2.0;
    out.roots = {std::complex<double>(x1), std::complex<double>(re, im),
                 std::complex<double>(re, -im)};
    return out;
}

} // namespace fodechain::cubic

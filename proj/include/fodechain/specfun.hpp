#pragma once

#include <stdexcept>

namespace fodechain::specfun {

/// Thrown when the Mittag-Leffler series cannot reach the requested
/// tolerance within the configured term budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation policy for the one-parameter Mittag-Leffler series.
struct MLSeriesConfig {
    int max_terms = 500;           // >= 50
    double term_tolerance = 1e-14; // absolute truncation threshold, > 0

    void validate() const;
};

/// Gamma function on the positive real axis (Lanczos approximation,
/// g = 7, 9 coefficients; reflection below 0.5).
///
/// Relative error <= 1e-12 on [1e-3, 170]. Throws std::domain_error for
/// non-positive or non-finite arguments.
double gamma(double x);

/// One-parameter Mittag-Leffler function E_m(z) = sum_k z^k / Gamma(m k + 1)
/// for 0 < m <= 1 and real z, as a truncated power series.
///
/// The series is summed until the next term falls below
/// config.term_tolerance in magnitude. Convergence envelope: the absolute
/// error scales with the largest series term times 1e-15 (alternating-sum
/// cancellation), so negative arguments are reliable for roughly z >= -6
/// at m = 0.5, widening as m grows (z >= -15 at m = 1 for 1e-10 absolute).
/// Positive arguments carry no cancellation and are limited only by the
/// term budget and double range; when the terms exceed either bound a
/// ConvergenceError is thrown rather than returning a cancelled-out
/// result. All internal callers stay within |z| <= 5.
double mittag_leffler(double m, double z, const MLSeriesConfig& config = {});

} // namespace fodechain::specfun

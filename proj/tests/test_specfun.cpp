#include "fodechain/specfun.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace fodechain;
using Catch::Approx;

namespace {

// Independent complementary-error-function oracle via the Maclaurin series
// of erf (converges fast for the small arguments used here).
double erfc_series(double x) {
    double term = x;
    double sum = x;
    for (int k = 1; k < 60; ++k) {
        term *= -x * x / static_cast<double>(k);
        sum += term / static_cast<double>(2 * k + 1);
    }
    return 1.0 - 2.0 / std::sqrt(M_PI) * sum;
}

} // namespace

TEST_CASE("gamma known values") {
    CHECK(specfun::gamma(1.0) == Approx(1.0).epsilon(1e-13));
    CHECK(specfun::gamma(0.5) == Approx(1.7724538509055160).epsilon(1e-12));
    CHECK(specfun::gamma(5.0) == Approx(24.0).epsilon(1e-13));
}

TEST_CASE("gamma domain errors") {
    CHECK_THROWS_AS(specfun::gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::gamma(-1.5), std::domain_error);
    CHECK_THROWS_AS(specfun::gamma(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(specfun::gamma(std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("gamma recurrence Gamma(x+1) = x Gamma(x)") {
    for (double x = 0.1; x <= 20.0; x += 0.1) {
        const double lhs = specfun::gamma(x + 1.0);
        const double rhs = x * specfun::gamma(x);
        CHECK(lhs == Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("gamma agrees with std::tgamma on [1e-3, 170]") {
    for (double x : {1e-3, 0.01, 0.1, 0.3, 0.49, 0.51, 0.7, 1.0, 1.5, 2.5, 3.7, 8.0,
                     17.3, 42.0, 99.5, 140.0, 170.0}) {
        CHECK(specfun::gamma(x) == Approx(std::tgamma(x)).epsilon(1e-12));
    }
}

TEST_CASE("mittag-leffler at zero is exactly one") {
    for (double m : {0.1, 0.3, 0.5, 0.65, 0.8, 1.0}) {
        CHECK(specfun::mittag_leffler(m, 0.0) == 1.0);
    }
}

TEST_CASE("E_1 equals the exponential on [-5, 5]") {
    for (double z = -5.0; z <= 5.0; z += 0.25) {
        CHECK(specfun::mittag_leffler(1.0, z) == Approx(std::exp(z)).margin(1e-10));
    }
}

TEST_CASE("E_1/2(-1) matches the erfc identity") {
    // E_{1/2}(-x) = exp(x^2) erfc(x) at x = 1, erfc from its own series
    const double expected = std::exp(1.0) * erfc_series(1.0);
    CHECK(specfun::mittag_leffler(0.5, -1.0) == Approx(expected).epsilon(1e-12));
    CHECK(expected == Approx(0.42758357615580700).epsilon(1e-10));
}

TEST_CASE("E_m(-lambda t^m) is non-increasing in t") {
    // grid chosen inside the documented cancellation envelope
    for (double m : {0.5, 0.65, 0.8, 1.0}) {
        for (double lambda : {0.5, 1.0}) {
            double prev = specfun::mittag_leffler(m, 0.0);
            for (double t = 0.1; t <= 10.0 + 1e-12; t += 0.1) {
                const double val = specfun::mittag_leffler(m, -lambda * std::pow(t, m));
                CHECK(val <= prev + 1e-12);
                prev = val;
            }
        }
    }
}

TEST_CASE("mittag-leffler convergence failures are reported") {
    // alternating terms blow past double range before decaying
    CHECK_THROWS_AS(specfun::mittag_leffler(0.3, -45.0), specfun::ConvergenceError);
    // a tight term budget cannot be met
    specfun::MLSeriesConfig cfg;
    cfg.max_terms = 50;
    CHECK_THROWS_AS(specfun::mittag_leffler(0.9, 30.0, cfg), specfun::ConvergenceError);
}

TEST_CASE("mittag-leffler input validation") {
    CHECK_THROWS_AS(specfun::mittag_leffler(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::mittag_leffler(1.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::mittag_leffler(0.5, std::nan("")), std::domain_error);
    specfun::MLSeriesConfig bad;
    bad.max_terms = 10;
    CHECK_THROWS_AS(specfun::mittag_leffler(0.5, 1.0, bad), std::invalid_argument);
    bad.max_terms = 500;
    bad.term_tolerance = 0.0;
    CHECK_THROWS_AS(specfun::mittag_leffler(0.5, 1.0, bad), std::invalid_argument);
}

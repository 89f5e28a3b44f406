#include "fodechain/cubic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace fodechain;
using Catch::Approx;

TEST_CASE("three planted real roots are recovered") {
    std::mt19937 rng(20240917);
    std::uniform_real_distribution<double> uni(0.01, 0.99);
    for (int trial = 0; trial < 1000; ++trial) {
        double r[3] = {uni(rng), uni(rng), uni(rng)};
        std::sort(r, r + 3);
        const double b = -(r[0] + r[1] + r[2]);
        const double c = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
        const double d = -r[0] * r[1] * r[2];
        const cubic::CubicRoots sol = cubic::solve_monic(b, c, d);
        for (int i = 0; i < 3; ++i) {
            REQUIRE(sol.roots[i].imag() == 0.0);
            REQUIRE(sol.roots[i].real() == Approx(r[i]).margin(1e-9));
        }
    }
}

TEST_CASE("complex pair branch") {
    // (x - 2)(x^2 + 1): root 2 and +/- i
    const cubic::CubicRoots sol = cubic::solve_monic(-2.0, 1.0, -2.0);
    CHECK(sol.discriminant < 0.0);
    CHECK(sol.roots[0].real() == Approx(2.0).margin(1e-12));
    CHECK(sol.roots[1].imag() == Approx(1.0).margin(1e-12));
    CHECK(sol.roots[2].imag() == Approx(-1.0).margin(1e-12));
}

TEST_CASE("triple root") {
    // (x - 1)^3
    const cubic::CubicRoots sol = cubic::solve_monic(-3.0, 3.0, -1.0);
    for (const auto& root : sol.roots) {
        CHECK(root.real() == Approx(1.0).margin(1e-6));
        CHECK(root.imag() == 0.0);
    }
}

TEST_CASE("discriminant formula on a known factorization") {
    // (x+1)(x+2)(x+3) = x^3 + 6x^2 + 11x + 6; root differences 1, 2, 1
    CHECK(cubic::discriminant_monic(6.0, 11.0, 6.0) == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("residuals of returned roots are tiny") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double b = uni(rng), c = uni(rng), d = uni(rng);
        const cubic::CubicRoots sol = cubic::solve_monic(b, c, d);
        for (const auto& x : sol.roots) {
            const auto res = ((x + b) * x + c) * x + d;
            REQUIRE(std::abs(res) < 1e-8);
        }
    }
}

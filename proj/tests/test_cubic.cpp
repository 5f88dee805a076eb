#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "kerrpa/cubic.hpp"

using namespace kerrpa;

namespace {

// Coefficients of a (x - r0)(x - r1)(x - r2).
std::array<double, 4> from_roots(double a, double r0, double r1, double r2) {
    return {a, -a * (r0 + r1 + r2), a * (r0 * r1 + r0 * r2 + r1 * r2), -a * r0 * r1 * r2};
}

}  // namespace

TEST_CASE("three distinct roots are recovered in ascending order") {
    const auto c = from_roots(2.0, 3.0, -1.0, 0.5);
    const auto r = solve_real_cubic(c[0], c[1], c[2], c[3]);
    REQUIRE(r.count == 3);
    CHECK(r.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(r.values[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.values[2] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_FALSE(r.has_repeated());
}

TEST_CASE("one real root with a complex pair") {
    // (x - 2)(x^2 + 1)
    const auto r = solve_real_cubic(1.0, -2.0, 1.0, -2.0);
    REQUIRE(r.count == 1);
    CHECK(r.values[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("double and triple roots carry multiplicity") {
    const auto d = from_roots(1.0, 1.0, 1.0, -2.0);
    const auto rd = solve_real_cubic(d[0], d[1], d[2], d[3]);
    REQUIRE(rd.count == 2);
    CHECK(rd.values[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(rd.values[1] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(rd.multiplicity[1] == 2);

    const auto t = from_roots(3.0, 0.7, 0.7, 0.7);
    const auto rt = solve_real_cubic(t[0], t[1], t[2], t[3]);
    REQUIRE(rt.count == 1);
    CHECK(rt.multiplicity[0] == 3);
    CHECK(rt.values[0] == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("degenerate leading coefficients") {
    SUBCASE("quadratic") {
        const auto r = solve_real_cubic(0.0, 1.0, -3.0, 2.0);
        REQUIRE(r.count == 2);
        CHECK(r.values[0] == doctest::Approx(1.0));
        CHECK(r.values[1] == doctest::Approx(2.0));
    }
    SUBCASE("linear") {
        const auto r = solve_real_cubic(0.0, 0.0, 4.0, -2.0);
        REQUIRE(r.count == 1);
        CHECK(r.values[0] == doctest::Approx(0.5));
    }
    SUBCASE("zero constant term factors out x") {
        const auto r = solve_real_cubic(1.0, -1.0, -2.0, 0.0);
        REQUIRE(r.count == 3);
        CHECK(r.values[0] == doctest::Approx(-1.0));
        CHECK(r.values[1] == 0.0);
        CHECK(r.values[2] == doctest::Approx(2.0));
    }
    SUBCASE("constant") {
        CHECK(solve_real_cubic(0.0, 0.0, 0.0, 1.0).count == 0);
        CHECK_THROWS_AS(solve_real_cubic(0.0, 0.0, 0.0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("random cubics: residual and recovery") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::uniform_real_distribution<double> scale(-6.0, 6.0);
    for (int trial = 0; trial < 2000; ++trial) {
        std::array<double, 3> roots{u(rng), u(rng), u(rng)};
        std::sort(roots.begin(), roots.end());
        if (roots[1] - roots[0] < 1e-2 || roots[2] - roots[1] < 1e-2) continue;
        const double a = std::pow(10.0, scale(rng));
        const auto c = from_roots(a, roots[0], roots[1], roots[2]);
        const auto r = solve_real_cubic(c[0], c[1], c[2], c[3]);
        REQUIRE(r.count == 3);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(r.values[i] - roots[i]) <= 1e-9 * (1.0 + std::abs(roots[i])));
    }
}

TEST_CASE("widely separated magnitudes keep the small root accurate") {
    const auto c = from_roots(1.0, 1e-9, 1.0, 1e6);
    const auto r = solve_real_cubic(c[0], c[1], c[2], c[3]);
    REQUIRE(r.count == 3);
    CHECK(r.values[0] == doctest::Approx(1e-9).epsilon(1e-9));
    CHECK(r.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.values[2] == doctest::Approx(1e6).epsilon(1e-12));
}

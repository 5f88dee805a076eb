#include <doctest.h>

#include <cmath>

#include "kerrpa/operating_points.hpp"
#include "kerrpa/pump.hpp"
#include "oracles.hpp"

using namespace kerrpa;

namespace {

// omega_p(E) on side s of the response curve, from
// E [(D + K E)^2 + (g + g3 E)^2] = 2 g1 b^2 with D = w0 - wp.
double omega_on_curve(const DeviceParams& p, double b, double E, int side) {
    const double g = p.gamma() + p.gamma3 * E;
    const double r = 2 * p.gamma1 * b * b / E - g * g;
    return p.omega0 + p.kerr * E - side * std::sqrt(std::max(r, 0.0));
}

double fold_residual(const DeviceParams& p, double wp, double E) {
    const double D = p.omega0 - wp;
    const double a = p.gamma() + 2 * p.gamma3 * E;
    const double c = D + 2 * p.kerr * E;
    return a * a + c * c - (p.kerr * p.kerr + p.gamma3 * p.gamma3) * E * E;
}

// Turning points of omega_p(E): sign changes of the finite-difference slope.
std::vector<double> turning_points(const DeviceParams& p, double b) {
    std::vector<double> out;
    // E_max where the radicand vanishes.
    auto radicand = [&](double E) {
        const double g = p.gamma() + p.gamma3 * E;
        return 2 * p.gamma1 * b * b / E - g * g;
    };
    double hi = 1.0;
    while (radicand(hi) > 0) hi *= 2;
    const double e_max = oracle::bisect(radicand, hi / 2, hi);
    for (int side : {-1, 1}) {
        auto slope = [&](double E) {
            const double h = 1e-7 * E;
            return (omega_on_curve(p, b, E + h, side) - omega_on_curve(p, b, E - h, side)) / (2 * h);
        };
        const int n = 20000;
        double E0 = 1e-6 * e_max, s0 = slope(E0);
        for (int i = 1; i < n; ++i) {
            const double E1 = e_max * (1e-6 + (1 - 2e-6) * i / n);
            const double s1 = slope(E1);
            if ((s0 < 0) != (s1 < 0)) out.push_back(omega_on_curve(p, b, oracle::bisect(slope, E0, E1), side));
            E0 = E1;
            s0 = s1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("peak detuning follows the Kerr pull") {
    const auto p = oracle::fig2();
    CHECK(response_peak_detuning(p, 0.0) == p.omega0);
    CHECK(response_peak_detuning(p, 100.0) < p.omega0);
    CHECK(response_peak_detuning(p, 100.0) == doctest::Approx(p.omega0 + p.kerr * 100.0));
}

TEST_CASE("peak of the top branch sits at w0 + K E") {
    const auto p = oracle::fig2();
    const double b = 2.0 * critical_point(p).b1c_in;
    const int n = 20000;
    double best_E = 0, best_wp = 0;
    const double lo = 0.85, hi = 1.0;
    for (int i = 0; i <= n; ++i) {
        const double wp = lo + (hi - lo) * i / n;
        const double E = solve_pump_energy(p, {wp, b, 0.0}).back();
        if (E > best_E) {
            best_E = E;
            best_wp = wp;
        }
    }
    CHECK(std::abs(response_peak_detuning(p, best_E) - best_wp) <= 2 * (hi - lo) / n);
}

TEST_CASE("instability locus by drive level") {
    const auto p = oracle::fig2();
    const double bc = critical_point(p).b1c_in;
    CHECK(instability_locus(p, {0.0, 0.5 * bc, 0.0}).empty());
    CHECK(instability_locus(p, {0.0, 0.999 * bc, 0.0}).empty());

    const auto at_critical = instability_locus(p, {0.0, bc, 0.0});
    REQUIRE(at_critical.size() == 1);
    CHECK(at_critical[0].omega_p == doctest::Approx(critical_point(p).omega_p_c).epsilon(1e-9));

    for (double frac : {1.5, 2.0, 5.0}) {
        const double b = frac * bc;
        const auto locus = instability_locus(p, {0.0, b, 0.0});
        const auto oracle_pts = turning_points(p, b);
        REQUIRE(locus.size() == 2);
        REQUIRE(oracle_pts.size() == 2);
        for (int k = 0; k < 2; ++k) {
            CHECK(std::abs(locus[k].omega_p - oracle_pts[k]) <= 1e-8);
            CHECK(std::abs(fold_residual(p, locus[k].omega_p, locus[k].E)) <=
                  1e-9 * (p.kerr * p.kerr + p.gamma3 * p.gamma3) * locus[k].E * locus[k].E);
        }
    }
}

TEST_CASE("root count changes exactly at the locus") {
    const auto p = oracle::fig2();
    const double b = 2.0 * critical_point(p).b1c_in;
    const auto locus = instability_locus(p, {0.0, b, 0.0});
    REQUIRE(locus.size() == 2);
    for (const auto& pt : locus) {
        const double step = 1e-8;
        const auto left = solve_pump_energy(p, {pt.omega_p - step, b, 0.0}).size();
        const auto right = solve_pump_energy(p, {pt.omega_p + step, b, 0.0}).size();
        CHECK(left != right);
        CHECK(std::max(left, right) == 3);
        CHECK(std::min(left, right) == 1);
    }
}

TEST_CASE("critical point without two-photon loss") {
    DeviceParams p;
    p.kerr = -3e-4;
    p.gamma1 = 0.01;
    p.gamma2 = 0.004;
    const double g = p.gamma();
    const auto cp = critical_point(p);
    REQUIRE(cp.exists);
    CHECK(cp.E_c == doctest::Approx(2 * std::sqrt(3.0) * g / (3 * std::abs(p.kerr))).epsilon(1e-14));
    CHECK(p.omega0 - cp.omega_p_c == doctest::Approx(std::sqrt(3.0) * g).epsilon(1e-14));
    CHECK(cp.b1c_in * cp.b1c_in ==
          doctest::Approx(4 / (3 * std::sqrt(3.0)) * g * g * g / (p.gamma1 * std::abs(p.kerr))).epsilon(1e-13));
    p.kerr = -p.kerr;
    CHECK(p.omega0 - critical_point(p).omega_p_c == doctest::Approx(-std::sqrt(3.0) * g).epsilon(1e-14));
}

TEST_CASE("no critical point unless |K| > sqrt(3) gamma3") {
    DeviceParams p;
    p.gamma1 = 0.01;
    p.gamma3 = 1.0;
    p.kerr = 1.7;
    CHECK_FALSE(critical_point(p).exists);
    p.kerr = 0.0;
    p.gamma3 = 0.0;
    CHECK_FALSE(critical_point(p).exists);
    p.kerr = 1.7320508075688772 * (1 + 1e-12);
    p.gamma3 = 1.0;
    const auto cp = critical_point(p);
    CHECK(cp.exists);
    CHECK(cp.ill_conditioned);
}

TEST_CASE("two-photon loss raises the critical drive") {
    auto p = oracle::fig2();
    double previous = 0.0;
    for (int i = 0; i <= 50; ++i) {
        p.gamma3 = std::abs(p.kerr) / std::sqrt(3.0) * i / 51.0;
        const auto cp = critical_point(p);
        REQUIRE(cp.exists);
        CHECK(cp.b1c_in > previous);
        previous = cp.b1c_in;
    }
}

TEST_CASE("critical point lies on the Kerr-pulled side and is self-consistent") {
    for (double K : {-1e-4, 2e-3, 5.0}) {
        DeviceParams p;
        p.kerr = K;
        p.gamma1 = 0.01 * std::min(1.0, std::abs(K) * 100);
        p.gamma2 = 0.3 * p.gamma1;
        p.gamma3 = 0.2 * std::abs(K);
        const auto cp = critical_point(p);
        REQUIRE(cp.exists);
        CHECK(cp.E_c > 0);
        CHECK(cp.b1c_in > 0);
        CHECK(std::signbit(p.omega0 - cp.omega_p_c) != std::signbit(K));
        const auto E = solve_pump_energy(p, {cp.omega_p_c, cp.b1c_in, 0.0});
        bool found = false;
        for (double e : E) found = found || oracle::close_rel(e, cp.E_c, 1e-6);
        CHECK(found);
        const double scale = (K * K + p.gamma3 * p.gamma3) * cp.E_c * cp.E_c;
        CHECK(std::abs(fold_residual(p, cp.omega_p_c, cp.E_c)) <= 1e-8 * scale);
        // Coalescence: the fold function is stationary in E there too.
        const double h = 1e-4 * cp.E_c;
        const double slope =
            (fold_residual(p, cp.omega_p_c, cp.E_c + h) - fold_residual(p, cp.omega_p_c, cp.E_c - h)) / (2 * h);
        CHECK(std::abs(slope * cp.E_c) <= 1e-6 * scale);
    }
}

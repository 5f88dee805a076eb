#include <doctest.h>

#include <cmath>

#include "kerrpa/errors.hpp"
#include "kerrpa/operating_points.hpp"
#include "kerrpa/small_signal.hpp"
#include "oracles.hpp"

using namespace kerrpa;
using oracle::cd;

namespace {

double commutator(const SmallSignalResponse& r) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += std::norm(r.A[i]) - std::norm(r.B[i]);
    return s;
}

SteadyState first_state(const DeviceParams& p, const PumpDrive& d) { return steady_states(p, d).front(); }

}  // namespace

TEST_CASE("linearization without pump") {
    const auto p = oracle::fig2();
    const PumpDrive d{0.98, 0.0, 0.0};
    const auto lin = linearize(p, first_state(p, d), d);
    CHECK(lin.W == cd(p.gamma(), p.omega0 - d.omega_p));
    CHECK(lin.V == cd(0.0, 0.0));
}

TEST_CASE("linearization coefficients") {
    const auto p = oracle::fig2();
    const double bc = critical_point(p).b1c_in;
    for (int i = 0; i <= 50; ++i) {
        const PumpDrive d{0.9 + 0.1 * i / 50.0, 1.5 * bc, 0.2};
        for (const auto& s : steady_states(p, d)) {
            const auto lin = linearize(p, s, d);
            CHECK(std::abs(lin.V) == doctest::Approx(std::hypot(p.kerr, p.gamma3) * s.E).epsilon(1e-14));
            const auto r = transfer_coefficients(p, s, d, 0.01);
            const cd sum = r.lambda0 + r.lambda1;
            const cd prod = r.lambda0 * r.lambda1;
            CHECK(std::abs(sum - 2 * lin.W.real()) <= 1e-12 * std::abs(lin.W));
            CHECK(std::abs(prod - (std::norm(lin.W) - std::norm(lin.V))) <= 1e-10 * std::norm(lin.W));
            CHECK(std::abs(r.lambda0 - s.lambda0) <= 1e-12 * std::abs(s.lambda1));
            CHECK(std::abs(r.lambda1 - s.lambda1) <= 1e-12 * std::abs(s.lambda1));
        }
    }
}

TEST_CASE("empty lossless cavity: all-pass reflection") {
    DeviceParams p;
    p.gamma1 = 0.02;
    p.kerr = -1e-3;
    const PumpDrive d{0.99, 0.0, 0.0};
    const auto s = first_state(p, d);
    const double Delta = p.omega0 - d.omega_p;
    for (double w : {-0.05, -0.01, 0.0, 0.003, 0.1}) {
        const auto r = transfer_coefficients(p, s, d, w);
        const cd expected = cd(-p.gamma1, Delta - w) / cd(p.gamma1, Delta - w);
        CHECK(std::abs(r.A[0] - expected) <= 1e-14);
        CHECK(std::abs(r.A[0]) == doctest::Approx(1.0).epsilon(1e-14));
        for (int i = 0; i < 3; ++i) CHECK(r.B[i] == cd(0.0, 0.0));
        CHECK(r.A[1] == cd(0.0, 0.0));
        CHECK(r.A[2] == cd(0.0, 0.0));
        CHECK(parametric_gain(p, s, d, w).value == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(intermodulation_gain(p, s, d, w).value == 0.0);
    }
}

TEST_CASE("commutator preservation at stable points") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        DeviceParams p;
        p.kerr = (u(rng) < 0.5 ? -1 : 1) * std::pow(10.0, -4 + 2 * u(rng));
        p.gamma1 = 0.01 * (0.2 + u(rng));
        p.gamma2 = p.gamma1 * 2 * u(rng);
        p.gamma3 = std::abs(p.kerr) * u(rng);
        p.phi1 = 6 * u(rng);
        p.phi2 = 6 * u(rng);
        p.phi3 = 6 * u(rng);
        const double E_scale = p.gamma() / std::abs(p.kerr);
        const double b = std::sqrt(E_scale * p.gamma() * p.gamma() / p.gamma1) * 3 * u(rng);
        const PumpDrive d{p.omega0 + p.kerr * E_scale * (4 * u(rng) - 2), b, 6 * u(rng)};
        for (const auto& s : steady_states(p, d)) {
            if (!s.stable) continue;
            for (int k = -10; k <= 10; ++k) {
                const double w = std::copysign(p.gamma() * std::pow(10.0, std::abs(k) / 3.0 - 2), k);
                CHECK(commutator(transfer_coefficients(p, s, d, w)) == doctest::Approx(1.0).epsilon(1e-9));
                ++checked;
            }
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("lossless pumped cavity: G_S = 1 + G_I") {
    DeviceParams p;
    p.kerr = -1e-4;
    p.gamma1 = 0.01;
    const double bc = critical_point(p).b1c_in;
    for (int i = 0; i <= 40; ++i) {
        const PumpDrive d{0.9 + 0.15 * i / 40.0, 0.9 * bc, 0.0};
        const auto s = first_state(p, d);
        for (double w : {0.0, 0.001, -0.004, 0.03}) {
            const auto r = transfer_coefficients(p, s, d, w);
            CHECK(std::norm(r.A[0]) - std::norm(r.B[0]) == doctest::Approx(1.0).epsilon(1e-9));
            const double gs = parametric_gain(p, s, d, w).value;
            const double gi = intermodulation_gain(p, s, d, w).value;
            CHECK(gs >= 1.0 - 1e-12);
            CHECK(gs == doctest::Approx(1.0 + gi).epsilon(1e-9));
        }
    }
}

TEST_CASE("divergence at the critical point") {
    const auto p = oracle::fig2();
    const auto cp = critical_point(p);
    const PumpDrive d{cp.omega_p_c, cp.b1c_in, 0.0};
    const auto s = first_state(p, d);
    CHECK_THROWS_AS(transfer_coefficients(p, s, d, 0.0), SingularResponse);
    const auto gi = intermodulation_gain(p, s, d, 0.0);
    CHECK(gi.diverged);
    CHECK(std::isinf(gi.value));
    CHECK(parametric_gain(p, s, d, 0.0).diverged);
    // Just below critical drive the gain is large and finite.
    const PumpDrive near{cp.omega_p_c, 0.99 * cp.b1c_in, 0.0};
    const auto sn = first_state(p, near);
    CHECK(parametric_gain(p, sn, near, 0.0).value > 1.0);
    CHECK(intermodulation_gain(p, sn, near, 0.0).value > 1.0);
}

TEST_CASE("real-root case: paper form and even symmetry") {
    const auto p = oracle::fig2();
    const double bc = critical_point(p).b1c_in;
    int real_cases = 0;
    for (int i = 0; i <= 100; ++i) {
        const PumpDrive d{0.93 + 0.05 * i / 100.0, 0.8 * bc, 0.0};
        const auto s = first_state(p, d);
        if (s.lambda0.imag() != 0.0) continue;
        ++real_cases;
        const auto lin = linearize(p, s, d);
        const double l0 = s.lambda0.real(), l1 = s.lambda1.real();
        for (double w : {0.0, 0.002, 0.01, 0.05}) {
            const cd D = (cd(0, -w) + l0) * (cd(0, -w) + l1);
            const double paper = std::norm(D - 2 * p.gamma1 * (cd(0, -w) + std::conj(lin.W))) /
                                 ((w * w + l0 * l0) * (w * w + l1 * l1));
            CHECK(parametric_gain(p, s, d, w).value == doctest::Approx(paper).epsilon(1e-12));
            CHECK(intermodulation_gain(p, s, d, w).value ==
                  doctest::Approx(intermodulation_gain(p, s, d, -w).value).epsilon(1e-12));
        }
    }
    CHECK(real_cases > 0);
}

TEST_CASE("underdamped poles set the gain peaks") {
    DeviceParams p;
    p.kerr = -1e-4;
    p.gamma1 = 0.01;
    p.gamma2 = 0.01;
    const PumpDrive d{1.05, 1.0, 0.0};
    const auto s = first_state(p, d);
    REQUIRE(s.lambda0.imag() != 0.0);
    const double a = s.lambda0.real(), b = std::abs(s.lambda0.imag());
    REQUIRE(b > a);
    double best_w = 0, best_g = -1;
    for (int i = 0; i <= 200000; ++i) {
        const double w = 2 * b * i / 200000.0;
        const double g = intermodulation_gain(p, s, d, w).value;
        if (g > best_g) {
            best_g = g;
            best_w = w;
        }
    }
    // |D|^2 = (a^2 + (w+b)^2)(a^2 + (w-b)^2) is smallest at w^2 = b^2 - a^2.
    CHECK(best_w == doctest::Approx(std::sqrt(b * b - a * a)).epsilon(1e-4));
    CHECK(std::abs(best_w - b) <= a * a / b);
}

TEST_CASE("gains do not depend on phase conventions") {
    auto p = oracle::fig2();
    const double bc = critical_point(p).b1c_in;
    const PumpDrive d0{0.96, 1.4 * bc, 0.0};
    const auto s0 = steady_states(p, d0);
    auto q = p;
    q.phi1 = 1.1;
    q.phi2 = -0.4;
    q.phi3 = 2.5;
    const PumpDrive d1{d0.omega_p, d0.b1_in, 0.9};
    const auto s1 = steady_states(q, d1);
    REQUIRE(s0.size() == s1.size());
    for (std::size_t k = 0; k < s0.size(); ++k)
        for (double w : {0.0, 0.003, -0.02}) {
            CHECK(oracle::close_rel(parametric_gain(p, s0[k], d0, w).value, parametric_gain(q, s1[k], d1, w).value,
                                    1e-12));
            CHECK(oracle::close_rel(intermodulation_gain(p, s0[k], d0, w).value,
                                    intermodulation_gain(q, s1[k], d1, w).value, 1e-12));
        }
}

TEST_CASE("gain spectrum agrees with the pointwise gains") {
    const auto p = oracle::fig2();
    const auto cp = critical_point(p);
    const PumpDrive d{cp.omega_p_c, 0.9 * cp.b1c_in, 0.0};
    const auto s = first_state(p, d);
    std::vector<double> w(257), gs(w.size()), gi(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = -0.05 + 0.1 * i / 256.0;
    gain_spectrum(p, s, d, w, gs, gi);
    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(gs[i] == doctest::Approx(parametric_gain(p, s, d, w[i]).value).epsilon(1e-12));
        CHECK(gi[i] == doctest::Approx(intermodulation_gain(p, s, d, w[i]).value).epsilon(1e-12));
    }
}

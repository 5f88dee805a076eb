#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kerrpa/kernels.hpp"

using namespace kerrpa::simd;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("dispatch picks a table") {
    const auto& k = kernels();
    CHECK((k.name == "scalar" || k.name == "avx2"));
    CHECK(scalar_kernels().name == "scalar");
}

TEST_CASE("vector and scalar moments agree") {
    const auto* avx = avx2_kernels();
    if (!avx) return;
    std::mt19937_64 rng(5);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 31u, 1000u, 2001u}) {
        const auto u = random_vector(rng, n), v = random_vector(rng, n), w = random_vector(rng, n);
        const double s2 = scalar_kernels().moment2(u.data(), w.data(), n);
        const double s4 = scalar_kernels().moment4(u.data(), v.data(), w.data(), n);
        double abs2 = 0, abs4 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            abs2 += std::abs(u[i] * u[i] * w[i]);
            abs4 += std::abs(u[i] * u[i] * v[i] * v[i] * w[i]);
        }
        CHECK(std::abs(avx->moment2(u.data(), w.data(), n) - s2) <= 1e-14 * abs2 + 1e-300);
        CHECK(std::abs(avx->moment4(u.data(), v.data(), w.data(), n) - s4) <= 1e-14 * abs4 + 1e-300);
    }
}

TEST_CASE("vector and scalar gain spectra agree") {
    const auto* avx = avx2_kernels();
    if (!avx) return;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        GainPoint pt;
        pt.re_w = 0.01 + 0.05 * u(rng);
        pt.im_w = 0.1 * (u(rng) - 0.5);
        pt.v_abs2 = u(rng) * (pt.re_w * pt.re_w + pt.im_w * pt.im_w);
        pt.product = pt.re_w * pt.re_w + pt.im_w * pt.im_w - pt.v_abs2;
        pt.gamma1 = pt.re_w * u(rng);
        pt.singular_abs2 = 1e-28;
        const std::size_t n = 1 + trial % 37;
        std::vector<double> w(n), gs0(n), gi0(n), gs1(n), gi1(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = 0.2 * (u(rng) - 0.5);
        if (trial % 5 == 0) {
            // An exactly singular point: product = 0 at w = 0.
            pt.product = 0.0;
            w[0] = 0.0;
        }
        scalar_kernels().gain_spectrum(pt, w.data(), gs0.data(), gi0.data(), n);
        avx->gain_spectrum(pt, w.data(), gs1.data(), gi1.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            if (std::isinf(gs0[i])) {
                CHECK(std::isinf(gs1[i]));
                CHECK(std::isinf(gi1[i]));
                continue;
            }
            CHECK(gs1[i] == doctest::Approx(gs0[i]).epsilon(1e-13));
            CHECK(gi1[i] == doctest::Approx(gi0[i]).epsilon(1e-13));
        }
    }
}

#pragma once

// Data-parallel inner loops with a scalar reference and an AVX2/FMA variant.
// The variant is chosen once at first use from CPUID; setting the
// environment variable KERRPA_SIMD=scalar forces the reference path.

#include <cstddef>
#include <string_view>

namespace kerrpa::simd {

/// Characteristic polynomial data for one operating point, shared by every
/// offset of a gain spectrum: D(w) = product - w^2 - 2 i w re_w.
struct GainPoint {
    double product = 0.0;  ///< |W|^2 - |V|^2
    double re_w = 0.0;
    double im_w = 0.0;
    double gamma1 = 0.0;
    double v_abs2 = 0.0;          ///< |V|^2
    double singular_abs2 = 0.0;   ///< |D|^2 below this counts as diverged
};

struct KernelTable {
    std::string_view name;
    /// sum_i u_i^2 w_i
    double (*moment2)(const double* u, const double* w, std::size_t n);
    /// sum_i u_i^2 v_i^2 w_i
    double (*moment4)(const double* u, const double* v, const double* w, std::size_t n);
    /// G_S = |D - 2 g1 (-i w + W*)|^2 / |D|^2 and G_I = 4 g1^2 |V|^2 / |D|^2
    /// per offset; both +inf where |D|^2 < singular_abs2.
    void (*gain_spectrum)(const GainPoint& point, const double* omega, double* g_s, double* g_i, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels() noexcept;

/// The dispatched table.
const KernelTable& kernels() noexcept;

}  // namespace kerrpa::simd

// Compiled with -mavx2 -mfma; reached only through avx2_kernels() after the
// CPU has been checked.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kerrpa/kernels.hpp"

namespace kerrpa::simd {
namespace detail {

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double moment2_avx2(const double* u, const double* w, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d u0 = _mm256_loadu_pd(u + i);
        const __m256d u1 = _mm256_loadu_pd(u + i + 4);
        acc0 = _mm256_fmadd_pd(_mm256_mul_pd(u0, u0), _mm256_loadu_pd(w + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_mul_pd(u1, u1), _mm256_loadu_pd(w + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d u0 = _mm256_loadu_pd(u + i);
        acc0 = _mm256_fmadd_pd(_mm256_mul_pd(u0, u0), _mm256_loadu_pd(w + i), acc0);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += u[i] * u[i] * w[i];
    return sum;
}

double moment4_avx2(const double* u, const double* v, const double* w, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    auto term = [&](std::size_t at) {
        const __m256d a = _mm256_loadu_pd(u + at);
        const __m256d b = _mm256_loadu_pd(v + at);
        return _mm256_mul_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    };
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(term(i), _mm256_loadu_pd(w + i), acc0);
        acc1 = _mm256_fmadd_pd(term(i + 4), _mm256_loadu_pd(w + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(term(i), _mm256_loadu_pd(w + i), acc0);
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += (u[i] * u[i]) * (v[i] * v[i]) * w[i];
    return sum;
}

void gain_spectrum_avx2(const GainPoint& pt, const double* omega, double* g_s, double* g_i, std::size_t n) {
    const __m256d product = _mm256_set1_pd(pt.product);
    const __m256d minus_two_re_w = _mm256_set1_pd(-2.0 * pt.re_w);
    const __m256d two_g1 = _mm256_set1_pd(2.0 * pt.gamma1);
    const __m256d two_g1_re_w = _mm256_set1_pd(2.0 * pt.gamma1 * pt.re_w);
    const __m256d im_w = _mm256_set1_pd(pt.im_w);
    const __m256d conv = _mm256_set1_pd(4.0 * pt.gamma1 * pt.gamma1 * pt.v_abs2);
    const __m256d singular = _mm256_set1_pd(pt.singular_abs2);
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());

    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d w = _mm256_loadu_pd(omega + k);
        const __m256d d_re = _mm256_fnmadd_pd(w, w, product);
        const __m256d d_im = _mm256_mul_pd(minus_two_re_w, w);
        const __m256d d2 = _mm256_fmadd_pd(d_re, d_re, _mm256_mul_pd(d_im, d_im));
        const __m256d n_re = _mm256_sub_pd(d_re, two_g1_re_w);
        const __m256d n_im = _mm256_fmadd_pd(two_g1, _mm256_add_pd(w, im_w), d_im);
        const __m256d n2 = _mm256_fmadd_pd(n_re, n_re, _mm256_mul_pd(n_im, n_im));
        const __m256d bad = _mm256_cmp_pd(d2, singular, _CMP_LT_OQ);
        _mm256_storeu_pd(g_s + k, _mm256_blendv_pd(_mm256_div_pd(n2, d2), inf, bad));
        _mm256_storeu_pd(g_i + k, _mm256_blendv_pd(_mm256_div_pd(conv, d2), inf, bad));
    }
    if (k < n) scalar_kernels().gain_spectrum(pt, omega + k, g_s + k, g_i + k, n - k);
}

}  // namespace detail

const KernelTable& avx2_table() noexcept {
    static const KernelTable table{"avx2", &detail::moment2_avx2, &detail::moment4_avx2, &detail::gain_spectrum_avx2};
    return table;
}

}  // namespace kerrpa::simd

#include <cmath>
#include <limits>

#include "kerrpa/kernels.hpp"

namespace kerrpa::simd {
namespace {

double moment2(const double* u, const double* w, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += u[i] * u[i] * w[i];
    return sum;
}

double moment4(const double* u, const double* v, const double* w, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += (u[i] * u[i]) * (v[i] * v[i]) * w[i];
    return sum;
}

void gain_spectrum(const GainPoint& pt, const double* omega, double* g_s, double* g_i, std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    const double conv = 4.0 * pt.gamma1 * pt.gamma1 * pt.v_abs2;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = omega[k];
        const double d_re = pt.product - w * w;
        const double d_im = -2.0 * w * pt.re_w;
        const double d2 = d_re * d_re + d_im * d_im;
        if (d2 < pt.singular_abs2) {
            g_s[k] = inf;
            g_i[k] = inf;
            continue;
        }
        const double n_re = d_re - 2.0 * pt.gamma1 * pt.re_w;
        const double n_im = d_im + 2.0 * pt.gamma1 * (w + pt.im_w);
        g_s[k] = (n_re * n_re + n_im * n_im) / d2;
        g_i[k] = conv / d2;
    }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table{"scalar", &moment2, &moment4, &gain_spectrum};
    return table;
}

}  // namespace kerrpa::simd

#include "kerrpa/small_signal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kerrpa/errors.hpp"
#include "kerrpa/kernels.hpp"

namespace kerrpa {
namespace {

const Complex I(0.0, 1.0);

struct Characteristic {
    double product, re_w, im_w, v_abs2;
};

Characteristic characteristic(const DeviceParams& p, const SteadyState& s, const PumpDrive& d) {
    const double E = s.E;
    // lambda0 lambda1 rather than the fold function, so a repeated root
    // (lambda0 = 0 exactly) stays singular.
    return {
        (s.lambda0 * s.lambda1).real(),
        p.gamma() + 2.0 * p.gamma3 * E,
        p.omega0 - d.omega_p + 2.0 * p.kerr * E,
        (p.kerr * p.kerr + p.gamma3 * p.gamma3) * E * E,
    };
}

Complex d_of(const Characteristic& c, double omega) {
    return {c.product - omega * omega, -2.0 * omega * c.re_w};
}

bool singular(const DeviceParams& p, Complex D) {
    const double g = p.gamma();
    return std::abs(D) < kSingularTolerance * g * g;
}

}  // namespace

Linearization linearize(const DeviceParams& p, const SteadyState& s, const PumpDrive& d) {
    const double E = s.E;
    Linearization lin;
    lin.W = I * (p.omega0 - d.omega_p) + p.gamma() + 2.0 * (I * p.kerr + p.gamma3) * E;
    lin.V = (I * p.kerr + p.gamma3) * E * std::exp(-2.0 * I * s.phi_B);
    return lin;
}

SmallSignalResponse transfer_coefficients(const DeviceParams& p, const SteadyState& s, const PumpDrive& d,
                                          double omega) {
    const auto c = characteristic(p, s, d);
    const auto lin = linearize(p, s, d);
    SmallSignalResponse r;
    r.omega = omega;
    r.W = lin.W;
    r.V = lin.V;
    r.lambda0 = s.lambda0;
    r.lambda1 = s.lambda1;
    r.D = d_of(c, omega);
    if (singular(p, r.D)) throw SingularResponse("|D(omega)| vanishes: operating point is on an instability");

    const Complex response = -I * omega + std::conj(lin.W);
    const double g1 = p.gamma1, g2 = p.gamma2, g3 = p.gamma3;
    const double B = s.B, phiB = s.phi_B;
    const Complex inv = 1.0 / r.D;
    r.A[0] = (r.D - 2.0 * g1 * response) * inv;
    r.B[0] = 2.0 * g1 * lin.V * std::exp(-2.0 * I * p.phi1) * inv;
    r.A[1] = -2.0 * std::sqrt(g1 * g2) * response * std::exp(-I * (p.phi1 - p.phi2)) * inv;
    r.B[1] = 2.0 * std::sqrt(g1 * g2) * lin.V * std::exp(-I * (p.phi1 + p.phi2)) * inv;
    r.A[2] = -2.0 * std::sqrt(2.0 * g1 * g3) * B * response * std::exp(-I * (p.phi1 - phiB - p.phi3)) * inv;
    r.B[2] = 2.0 * std::sqrt(2.0 * g1 * g3) * B * lin.V * std::exp(-I * (p.phi1 + p.phi3 + phiB)) * inv;
    return r;
}

GainValue parametric_gain(const DeviceParams& p, const SteadyState& s, const PumpDrive& d, double omega) {
    const auto c = characteristic(p, s, d);
    const Complex D = d_of(c, omega);
    if (singular(p, D)) return {std::numeric_limits<double>::infinity(), true};
    const Complex numerator = D - 2.0 * p.gamma1 * Complex(c.re_w, -(omega + c.im_w));
    return {std::norm(numerator) / std::norm(D), false};
}

GainValue intermodulation_gain(const DeviceParams& p, const SteadyState& s, const PumpDrive& d, double omega) {
    const auto c = characteristic(p, s, d);
    const Complex D = d_of(c, omega);
    if (singular(p, D)) return {std::numeric_limits<double>::infinity(), true};
    return {4.0 * p.gamma1 * p.gamma1 * c.v_abs2 / std::norm(D), false};
}

void gain_spectrum(const DeviceParams& p, const SteadyState& s, const PumpDrive& d, std::span<const double> omega,
                   std::span<double> g_s, std::span<double> g_i) {
    if (g_s.size() != omega.size() || g_i.size() != omega.size())
        throw std::invalid_argument("gain_spectrum: output spans must match the offset grid");
    const auto c = characteristic(p, s, d);
    const double g = p.gamma();
    const double thr = kSingularTolerance * g * g;
    const simd::GainPoint pt{c.product, c.re_w, c.im_w, p.gamma1, c.v_abs2, thr * thr};
    simd::kernels().gain_spectrum(pt, omega.data(), g_s.data(), g_i.data(), omega.size());
}

}  // namespace kerrpa

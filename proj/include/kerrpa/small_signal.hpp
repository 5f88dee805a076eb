#pragma once

// Linearized response about a pump steady state. The offset omega is
// measured from omega_p in the rotating frame.

#include <array>
#include <span>

#include "kerrpa/device.hpp"
#include "kerrpa/pump.hpp"

namespace kerrpa {

struct Linearization {
    ComplexRate W{};  ///< i(w0-wp) + g + 2(iK+g3) B^2
    ComplexRate V{};  ///< (iK+g3) B^2 exp(-2i phi_B)
};

Linearization linearize(const DeviceParams& params, const SteadyState& state, const PumpDrive& drive);

/// Output c1_out(w) = sum_i A_i c_i_in + B_i c_i_in^dagger (index 0..2 for
/// ports 1..3).
struct SmallSignalResponse {
    double omega = 0.0;
    ComplexRate W{}, V{};
    ComplexRate lambda0{}, lambda1{};
    Complex D{};  ///< (-iw + lambda0)(-iw + lambda1)
    std::array<Complex, 3> A{};
    std::array<Complex, 3> B{};
};

/// |D(w)| below this times gamma^2 is treated as an exact instability.
inline constexpr double kSingularTolerance = 1e-14;

/// Throws SingularResponse when |D(omega)| < kSingularTolerance * gamma^2.
SmallSignalResponse transfer_coefficients(const DeviceParams& params, const SteadyState& state,
                                          const PumpDrive& drive, double omega);

struct GainValue {
    double value = 0.0;  ///< power ratio; +inf when diverged
    bool diverged = false;
};

/// G_S = |A1(w)|^2.
GainValue parametric_gain(const DeviceParams& params, const SteadyState& state, const PumpDrive& drive, double omega);

/// G_I = |B1(w)|^2 = 4 g1^2 |V|^2 / |D(w)|^2.
GainValue intermodulation_gain(const DeviceParams& params, const SteadyState& state, const PumpDrive& drive,
                               double omega);

/// Both gains over an offset grid, through the dispatched SIMD kernel.
/// Diverged entries hold +inf.
void gain_spectrum(const DeviceParams& params, const SteadyState& state, const PumpDrive& drive,
                   std::span<const double> omega, std::span<double> g_s, std::span<double> g_i);

}  // namespace kerrpa

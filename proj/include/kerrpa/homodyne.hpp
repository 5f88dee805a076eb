#pragma once

// Homodyne noise power of the reflected field for Nyquist (thermal or
// vacuum) inputs on all three ports, with the LO phase-locked to the pump.

#include <limits>
#include <span>
#include <vector>

#include "kerrpa/device.hpp"
#include "kerrpa/pump.hpp"

namespace kerrpa {

/// Theta_i = hbar omega_p / (k_B T_i); +inf is zero temperature. Bath
/// occupations are evaluated at omega_p for every offset.
struct ThermalEnv {
    double theta1 = std::numeric_limits<double>::infinity();
    double theta2 = std::numeric_limits<double>::infinity();
    double theta3 = std::numeric_limits<double>::infinity();

    bool operator==(const ThermalEnv&) const = default;
};

/// Bose occupation exp(-Theta) / (1 - exp(-Theta)).
double occupation(double theta) noexcept;

/// coth(Theta / 2) = 1 + 2 n.
double thermal_factor(double theta) noexcept;

struct NoiseValue {
    double value = 0.0;
    bool diverged = false;
};

/// P(omega) at LO phase phi_lo, in units of the vacuum level.
NoiseValue noise_power(const DeviceParams& params, const SteadyState& state, const PumpDrive& drive,
                       const ThermalEnv& env, double omega, double phi_lo);

/// P(0) from the coth form.
NoiseValue noise_power_dc(const DeviceParams& params, const SteadyState& state, const PumpDrive& drive,
                          const ThermalEnv& env, double phi_lo);

/// P(phi) = alpha + Re(beta exp(2 i phi)) = alpha + |beta| cos(2 phi + arg beta).
struct SqueezeResult {
    double alpha = 0.0;
    Complex beta{};
    double p_min = 0.0;
    double p_max = 0.0;
    double phi_min = 0.0;  ///< in [0, pi)
    double phi_max = 0.0;  ///< in [0, pi)
    bool diverged = false;

    double operator()(double phi) const noexcept;
};

SqueezeResult lo_phase_extrema(const DeviceParams& params, const SteadyState& state, const PumpDrive& drive,
                               const ThermalEnv& env, double omega);

struct SqueezeRow {
    double b1_frac = 0.0;
    double b1_in = 0.0;
    double E = 0.0;
    double p_min0 = 0.0;
    double p_max0 = 0.0;
    double phi_min = 0.0;
    bool diverged = false;
    bool above_critical = false;  ///< b1_frac > 1
    bool stable = false;          ///< the chosen branch is strictly stable
};

/// p_min(0) against b1_in / b1c_in with omega_p at its critical value, on
/// the lowest-E stable branch (lowest-E branch if none is stable).
/// Throws NoCriticalPoint when |K| <= sqrt(3) gamma3.
std::vector<SqueezeRow> squeeze_vs_pump(const DeviceParams& params, const ThermalEnv& env,
                                        std::span<const double> pump_fractions);

}  // namespace kerrpa

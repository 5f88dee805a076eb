#pragma once

// Classical pump response: intracavity energy E = B^2 from the steady-state
// cubic, the cavity phase, the reflected pump and the two relaxation roots.

#include <vector>

#include "kerrpa/cubic.hpp"
#include "kerrpa/device.hpp"

namespace kerrpa {

/// (K^2+g3^2) E^3 + 2[(w0-wp) K + g g3] E^2 + [(w0-wp)^2 + g^2] E - 2 g1 b^2.
/// Not normalized by K^2+g3^2, so K = g3 = 0 leaves the linear cavity.
struct CubicCoefficients {
    double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

    double operator()(double E) const noexcept { return eval_cubic(c3, c2, c1, c0, E); }
    double derivative(double E) const noexcept { return (3.0 * c3 * E + 2.0 * c2) * E + c1; }
};

CubicCoefficients cubic_coefficients(const DeviceParams& params, const PumpDrive& drive);

/// Nonnegative real roots, ascending; 1, 2 (tangency) or 3 of them.
/// Throws DegenerateModel when gamma1 + gamma2 <= 0.
std::vector<double> solve_pump_energy(const DeviceParams& params, const PumpDrive& drive);

/// Same roots with multiplicities (2 at a fold, 3 at the critical point).
CubicRoots solve_pump_roots(const DeviceParams& params, const PumpDrive& drive);

/// lambda0 * lambda1 = |W|^2 - |V|^2 = d(cubic)/dE. Zero exactly on the
/// instability locus.
double fold_function(const DeviceParams& params, double omega_p, double E) noexcept;

struct RelaxationRoots {
    ComplexRate lambda0, lambda1;  ///< Re(lambda0) <= Re(lambda1)
};

/// Roots re_w -/+ sqrt(radicand) of lambda^2 - 2 re_w lambda + product = 0,
/// radicand = re_w^2 - product supplied separately to avoid cancellation.
/// lambda0 is taken as product / lambda1 so it stays accurate near zero.
RelaxationRoots relaxation_roots(double re_w, double radicand, double product) noexcept;

/// Relaxation roots about the pump at intracavity energy E.
RelaxationRoots relaxation_roots(const DeviceParams& params, double omega_p, double E) noexcept;

struct SteadyState {
    double E = 0.0;
    double B = 0.0;
    double phi_B = 0.0;
    Complex b1_out{};
    ComplexRate lambda0{};
    ComplexRate lambda1{};
    bool stable = false;    ///< Re(lambda0) > kMarginalTolerance * gamma
    bool marginal = false;  ///< |Re(lambda0)| <= kMarginalTolerance * gamma
    int branch_index = 0;
};

inline constexpr double kMarginalTolerance = 1e-9;

SteadyState steady_state(const DeviceParams& params, const PumpDrive& drive, double E, int branch_index = 0);

/// Every branch at this drive, ascending in E.
std::vector<SteadyState> steady_states(const DeviceParams& params, const PumpDrive& drive);

/// b1_out / b1_in. Throws UndefinedForZeroDrive when b1_in == 0.
Complex reflection_coefficient(const SteadyState& state, const PumpDrive& drive);

}  // namespace kerrpa

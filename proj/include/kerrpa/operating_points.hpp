#pragma once

// Special points of the Duffing-like response: the response peak, the fold
// (instability) locus and the critical point where the two folds coalesce.

#include <vector>

#include "kerrpa/device.hpp"

namespace kerrpa {

/// Pump frequency at which the response with intracavity energy E peaks:
/// omega0 - omega_p + K E = 0.
double response_peak_detuning(const DeviceParams& params, double E);

struct LocusPoint {
    double omega_p = 0.0;
    double E = 0.0;
};

/// Points on the response curve where d(omega_p)/dE = 0, ascending in
/// omega_p. Empty below the critical drive, one point at it, two above.
std::vector<LocusPoint> instability_locus(const DeviceParams& params, const PumpDrive& drive);

struct CriticalPoint {
    double E_c = 0.0;
    double omega_p_c = 0.0;
    double b1c_in = 0.0;
    bool exists = false;
    /// |K| - sqrt(3) gamma3 < 1e-9 |K|: formulas exact but explosive.
    bool ill_conditioned = false;
};

CriticalPoint critical_point(const DeviceParams& params);

}  // namespace kerrpa

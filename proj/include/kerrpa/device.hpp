#pragma once

// Lumped model of a single driven cavity mode with a Kerr term, linear loss
// and two-photon loss. All rates are angular frequencies in one consistent
// unit; the test fixtures use omega0 = 1.

#include <complex>
#include <string>
#include <vector>

namespace kerrpa {

using Complex = std::complex<double>;

/// Complex relaxation rate or linearization coefficient (W, V, lambda).
using ComplexRate = std::complex<double>;

struct DeviceParams {
    double omega0 = 1.0;  ///< mode frequency, > 0
    double kerr = 0.0;    ///< Kerr constant K, signed
    double gamma1 = 0.0;  ///< input-port coupling rate
    double gamma2 = 0.0;  ///< linear loss rate
    double gamma3 = 0.0;  ///< two-photon loss rate
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi3 = 0.0;

    /// Total linear damping gamma1 + gamma2.
    double gamma() const noexcept { return gamma1 + gamma2; }

    bool operator==(const DeviceParams&) const = default;
};

struct PumpDrive {
    double omega_p = 1.0;
    double b1_in = 0.0;  ///< sqrt(photon flux), >= 0
    double psi1 = 0.0;

    bool operator==(const PumpDrive&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    /// |K| > sqrt(3) gamma3, strict.
    bool bistability_reachable = false;

    bool valid() const noexcept { return violations.empty(); }
    bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate(const DeviceParams& params);

/// Throws DegenerateModel listing every violation when `params` is invalid.
void require_valid(const DeviceParams& params);

/// |K| > sqrt(3) gamma3.
bool bistability_reachable(const DeviceParams& params) noexcept;

}  // namespace kerrpa

#include "kerrpa/device.hpp"

#include <cmath>

#include "kerrpa/errors.hpp"

namespace kerrpa {

bool bistability_reachable(const DeviceParams& params) noexcept {
    return std::abs(params.kerr) > std::sqrt(3.0) * params.gamma3;
}

ValidationReport validate(const DeviceParams& p) {
    ValidationReport report;
    auto check = [&](bool ok, const char* message) {
        if (!ok) report.violations.emplace_back(message);
    };
    check(std::isfinite(p.omega0) && p.omega0 > 0.0, "omega0 must be finite and > 0");
    check(std::isfinite(p.kerr), "kerr must be finite");
    check(std::isfinite(p.gamma1) && p.gamma1 >= 0.0, "gamma1 must be finite and >= 0");
    check(std::isfinite(p.gamma2) && p.gamma2 >= 0.0, "gamma2 must be finite and >= 0");
    check(std::isfinite(p.gamma3) && p.gamma3 >= 0.0, "gamma3 must be finite and >= 0");
    check(p.gamma1 + p.gamma2 > 0.0, "gamma1 + gamma2 must be > 0");
    check(std::isfinite(p.phi1) && std::isfinite(p.phi2) && std::isfinite(p.phi3),
          "port phases must be finite");
    report.bistability_reachable = bistability_reachable(p);
    return report;
}

void require_valid(const DeviceParams& params) {
    const auto report = validate(params);
    if (report.valid()) return;
    std::string message = "invalid device parameters:";
    for (const auto& v : report.violations) message += " " + v + ";";
    throw DegenerateModel(message);
}

}  // namespace kerrpa

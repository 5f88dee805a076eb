#pragma once

// Lumped-model coefficients from a sampled transmission-line profile:
// eigenmodes of d/dx[(1/C) du/dx] = -w^2 L0 u with u(0) = u(l) = 0, then
// the overlap integrals giving K, the cross-Kerr shift, gamma2 and gamma3.

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "kerrpa/device.hpp"

namespace kerrpa {

/// Samples on a uniform grid of n_grid() nodes spanning [0, length].
struct LineProfile {
    double length = 0.0;  ///< l (m)
    double I_c = 1.0;     ///< critical current (A)
    double hbar = 1.054571817e-34;
    std::vector<double> C;   ///< F/m, > 0
    std::vector<double> L0;  ///< H/m, > 0
    std::vector<double> dL;  ///< H/m, >= 0
    std::vector<double> R0;  ///< Ohm/m, >= 0
    std::vector<double> dR;  ///< Ohm/m, >= 0

    std::size_t n_grid() const noexcept { return C.size(); }
    double spacing() const noexcept { return length / static_cast<double>(n_grid() - 1); }
};

/// Throws ConfigError naming the offending field.
void validate(const LineProfile& profile);

/// Uniform line: every sample constant.
LineProfile uniform_profile(double length, std::size_t n_grid, double C, double L0, double dL, double R0, double dR,
                            double I_c, double hbar);

struct ModeSolution {
    int n = 0;  ///< 1-based
    double omega = 0.0;
    /// Samples at the grid nodes, u(0) = u(l) = 0, u'(0) > 0, trapezoid
    /// integral of L0 u^2 equal to 1.
    std::vector<double> u;
};

/// Lowest n_modes modes, ascending. Throws ResolutionError when n_modes is
/// not in [1, n_grid / 4].
std::vector<ModeSolution> solve_modes(const LineProfile& profile, int n_modes);

/// Composite trapezoid of f over the profile grid.
double trapezoid(const LineProfile& profile, std::span<const double> f);

/// K = -(hbar w^2 / I_c^2) int u^4 dL dx
double kerr_constant(const LineProfile& profile, const ModeSolution& mode);

/// lambda_ab = -(3 hbar w_a w_b / I_c^2) int u_a^2 u_b^2 dL dx.
/// Throws SameModeError for a == b.
double cross_kerr(const LineProfile& profile, const ModeSolution& a, const ModeSolution& b);

/// gamma2 = (1/2) int u^2 R0 dx
double gamma2_from_profile(const LineProfile& profile, const ModeSolution& mode);

/// gamma3 = (3 hbar w0 / (8 I_c^2)) int u^4 dR dx, w0 the driven mode.
double gamma3_from_profile(const LineProfile& profile, const ModeSolution& mode);

struct DerivedDevice {
    DeviceParams params;
    ModeSolution mode;
    double int_u4_dL = 0.0;
    double int_u2_R0 = 0.0;
    double int_u4_dR = 0.0;
};

/// omega0, K, gamma2, gamma3 of mode `mode_index` (1-based); gamma1 is the
/// caller's port coupling; phases zero.
DerivedDevice derive_device(const LineProfile& profile, int mode_index, double gamma1);

/// {"l", "I_c", "hbar", "grid", "C", "L0", "dL", "R0", "dR"}. Syntax errors
/// carry the byte offset; length mismatches name the array.
LineProfile parse_profile(std::string_view json_text);
LineProfile load_profile(const std::filesystem::path& path);

}  // namespace kerrpa

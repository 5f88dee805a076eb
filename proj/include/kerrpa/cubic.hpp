#pragma once

#include <array>
#include <span>

namespace kerrpa {

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending.
///
/// Closed form (trigonometric or Cardano) on the monic form, followed by a
/// guarded Newton polish of every root. A complex pair whose imaginary part
/// is below kComplexTolerance * scale, or two real roots closer than that,
/// come back as one root of multiplicity 2; a double root perturbed by
/// rounding splits by ~sqrt(eps). Three roots whose spread is below
/// kClusterTolerance * scale come back as their centroid with multiplicity 3.
/// Near a triple root a relative coefficient error r moves the individual
/// roots by ~r^(1/3), while the centroid -c2/(3 c3) stays accurate.
struct CubicRoots {
    std::array<double, 3> values{};
    std::array<int, 3> multiplicity{};
    int count = 0;

    std::span<const double> roots() const noexcept { return {values.data(), static_cast<std::size_t>(count)}; }
    bool has_repeated() const noexcept {
        for (int i = 0; i < count; ++i)
            if (multiplicity[i] > 1) return true;
        return false;
    }
};

inline constexpr double kComplexTolerance = 1e-7;
inline constexpr double kClusterTolerance = 1e-3;

/// Leading coefficients may be exactly zero; the problem then drops to a
/// quadratic or linear one. Throws std::invalid_argument when all four are 0.
CubicRoots solve_real_cubic(double c3, double c2, double c1, double c0);

inline double eval_cubic(double c3, double c2, double c1, double c0, double x) noexcept {
    return ((c3 * x + c2) * x + c1) * x + c0;
}

}  // namespace kerrpa

#include "kerrpa/homodyne.hpp"

#include <cmath>
#include <numbers>

#include "kerrpa/errors.hpp"
#include "kerrpa/operating_points.hpp"
#include "kerrpa/small_signal.hpp"

namespace kerrpa {
namespace {

const Complex I(0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::array<double, 3> occupations(const ThermalEnv& env) {
    return {occupation(env.theta1), occupation(env.theta2), occupation(env.theta3)};
}

double wrap_half_turn(double phi) {
    phi = std::fmod(phi, std::numbers::pi);
    return phi < 0.0 ? phi + std::numbers::pi : phi;
}

}  // namespace

double occupation(double theta) noexcept {
    if (std::isinf(theta) && theta > 0.0) return 0.0;
    return 1.0 / std::expm1(theta);
}

double thermal_factor(double theta) noexcept { return 1.0 + 2.0 * occupation(theta); }

NoiseValue noise_power(const DeviceParams& p, const SteadyState& s, const PumpDrive& d, const ThermalEnv& env,
                       double omega, double phi_lo) {
    SmallSignalResponse plus, minus;
    try {
        plus = transfer_coefficients(p, s, d, omega);
        minus = transfer_coefficients(p, s, d, -omega);
    } catch (const SingularResponse&) {
        return {kInf, true};
    }
    const auto n = occupations(env);
    const Complex lo = std::exp(I * phi_lo);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Complex annihilated = std::conj(lo) * std::conj(plus.A[i]) + lo * minus.B[i];
        const Complex created = lo * minus.A[i] + std::conj(lo) * std::conj(plus.B[i]);
        total += std::norm(annihilated) * n[i] + std::norm(created) * (n[i] + 1.0);
    }
    return {total, false};
}

NoiseValue noise_power_dc(const DeviceParams& p, const SteadyState& s, const PumpDrive& d, const ThermalEnv& env,
                          double phi_lo) {
    SmallSignalResponse r;
    try {
        r = transfer_coefficients(p, s, d, 0.0);
    } catch (const SingularResponse&) {
        return {kInf, true};
    }
    const std::array<double, 3> coth{thermal_factor(env.theta1), thermal_factor(env.theta2),
                                     thermal_factor(env.theta3)};
    const Complex lo = std::exp(I * phi_lo);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) total += std::norm(std::conj(lo) * std::conj(r.A[i]) + lo * r.B[i]) * coth[i];
    return {total, false};
}

double SqueezeResult::operator()(double phi) const noexcept {
    return alpha + (beta * std::exp(2.0 * I * phi)).real();
}

SqueezeResult lo_phase_extrema(const DeviceParams& p, const SteadyState& s, const PumpDrive& d,
                               const ThermalEnv& env, double omega) {
    SqueezeResult out;
    SmallSignalResponse plus, minus;
    try {
        plus = transfer_coefficients(p, s, d, omega);
        minus = transfer_coefficients(p, s, d, -omega);
    } catch (const SingularResponse&) {
        out.diverged = true;
        out.alpha = kInf;
        out.p_min = kNaN;
        out.p_max = kInf;
        out.phi_min = out.phi_max = kNaN;
        return out;
    }
    // |exp(-i phi) X + exp(i phi) Y|^2 = |X|^2 + |Y|^2 + 2 Re(conj(X) Y exp(2 i phi))
    const auto n = occupations(env);
    auto accumulate = [&](Complex x, Complex y, double weight) {
        out.alpha += weight * (std::norm(x) + std::norm(y));
        out.beta += 2.0 * weight * std::conj(x) * y;
    };
    for (int i = 0; i < 3; ++i) {
        accumulate(std::conj(plus.A[i]), minus.B[i], n[i]);
        accumulate(std::conj(plus.B[i]), minus.A[i], n[i] + 1.0);
    }
    const double depth = std::abs(out.beta);
    out.p_max = out.alpha + depth;
    out.p_min = std::max(out.alpha - depth, 0.0);
    const double phi_max = depth > 0.0 ? -0.5 * std::arg(out.beta) : 0.0;
    out.phi_max = wrap_half_turn(phi_max);
    out.phi_min = wrap_half_turn(phi_max + 0.5 * std::numbers::pi);
    return out;
}

std::vector<SqueezeRow> squeeze_vs_pump(const DeviceParams& p, const ThermalEnv& env,
                                        std::span<const double> pump_fractions) {
    const auto cp = critical_point(p);
    if (!cp.exists) throw NoCriticalPoint("squeeze sweep needs |K| > sqrt(3) gamma3 to normalize the drive");

    std::vector<SqueezeRow> rows;
    rows.reserve(pump_fractions.size());
    for (double fraction : pump_fractions) {
        const PumpDrive drive{cp.omega_p_c, fraction * cp.b1c_in, 0.0};
        const auto states = steady_states(p, drive);
        const SteadyState* chosen = &states.front();
        for (const auto& st : states)
            if (st.stable) {
                chosen = &st;
                break;
            }
        const auto sq = lo_phase_extrema(p, *chosen, drive, env, 0.0);
        rows.push_back({fraction, drive.b1_in, chosen->E, sq.p_min, sq.p_max, sq.phi_min, sq.diverged,
                        fraction > 1.0, chosen->stable});
    }
    return rows;
}

}  // namespace kerrpa

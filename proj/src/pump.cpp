#include "kerrpa/pump.hpp"

#include <cmath>

#include "kerrpa/errors.hpp"

namespace kerrpa {

CubicCoefficients cubic_coefficients(const DeviceParams& p, const PumpDrive& d) {
    const double detuning = p.omega0 - d.omega_p;
    const double g = p.gamma();
    return {
        p.kerr * p.kerr + p.gamma3 * p.gamma3,
        2.0 * (detuning * p.kerr + g * p.gamma3),
        detuning * detuning + g * g,
        -2.0 * p.gamma1 * d.b1_in * d.b1_in,
    };
}

CubicRoots solve_pump_roots(const DeviceParams& params, const PumpDrive& drive) {
    if (!(params.gamma() > 0.0)) throw DegenerateModel("total linear damping gamma1 + gamma2 must be > 0");
    const auto c = cubic_coefficients(params, drive);
    const auto raw = solve_real_cubic(c.c3, c.c2, c.c1, c.c0);

    double scale = 0.0;
    for (double r : raw.roots()) scale = std::max(scale, std::abs(r));

    CubicRoots kept;
    for (int i = 0; i < raw.count; ++i) {
        double E = raw.values[i];
        if (E < -1e-12 * scale) continue;
        if (E < 0.0) E = 0.0;
        kept.values[kept.count] = E;
        kept.multiplicity[kept.count] = raw.multiplicity[i];
        ++kept.count;
    }
    return kept;
}

std::vector<double> solve_pump_energy(const DeviceParams& params, const PumpDrive& drive) {
    const auto roots = solve_pump_roots(params, drive);
    return {roots.roots().begin(), roots.roots().end()};
}

double fold_function(const DeviceParams& p, double omega_p, double E) noexcept {
    const double detuning = p.omega0 - omega_p;
    const double re_w = p.gamma() + 2.0 * p.gamma3 * E;
    const double im_w = detuning + 2.0 * p.kerr * E;
    const double v2 = (p.kerr * p.kerr + p.gamma3 * p.gamma3) * E * E;
    return re_w * re_w + im_w * im_w - v2;
}

RelaxationRoots relaxation_roots(double re_w, double radicand, double product) noexcept {
    const ComplexRate root = std::sqrt(ComplexRate(radicand, 0.0));
    const ComplexRate lambda1 = re_w + root;
    // A complex pair shares its real part; only the real case cancels.
    if (radicand < 0.0 || lambda1 == 0.0) return {re_w - root, lambda1};
    return {ComplexRate(product) / lambda1, lambda1};
}

RelaxationRoots relaxation_roots(const DeviceParams& p, double omega_p, double E) noexcept {
    const double pull = p.omega0 - omega_p + 2.0 * p.kerr * E;
    const double radicand = (p.kerr * p.kerr + p.gamma3 * p.gamma3) * E * E - pull * pull;
    return relaxation_roots(p.gamma() + 2.0 * p.gamma3 * E, radicand, fold_function(p, omega_p, E));
}

namespace {

SteadyState make_state(const DeviceParams& p, const PumpDrive& d, double E, int branch_index, bool repeated) {
    SteadyState s;
    s.E = E;
    s.B = std::sqrt(E);
    s.branch_index = branch_index;

    const double detuning = p.omega0 - d.omega_p;
    const Complex i(0.0, 1.0);
    if (s.B > 0.0) {
        const Complex lhs = (i * detuning + p.gamma()) * s.B + (i * p.kerr + p.gamma3) * s.B * E;
        s.phi_B = d.psi1 - p.phi1 + std::arg(i * lhs);
    }
    const double theta = p.phi1 + s.phi_B - d.psi1;
    s.b1_out = d.b1_in - i * std::sqrt(2.0 * p.gamma1) * s.B * std::exp(-i * theta);

    // The fold function is the E-derivative of the cubic, so it vanishes
    // exactly on a repeated root.
    auto roots = relaxation_roots(p, d.omega_p, E);
    if (repeated) {
        const double pull = p.omega0 - d.omega_p + 2.0 * p.kerr * E;
        const double radicand = (p.kerr * p.kerr + p.gamma3 * p.gamma3) * E * E - pull * pull;
        roots = relaxation_roots(p.gamma() + 2.0 * p.gamma3 * E, radicand, 0.0);
    }
    s.lambda0 = roots.lambda0;
    s.lambda1 = roots.lambda1;
    const double tol = kMarginalTolerance * p.gamma();
    s.marginal = std::abs(s.lambda0.real()) <= tol;
    s.stable = s.lambda0.real() > tol;
    return s;
}

}  // namespace

SteadyState steady_state(const DeviceParams& params, const PumpDrive& drive, double E, int branch_index) {
    return make_state(params, drive, E, branch_index, false);
}

std::vector<SteadyState> steady_states(const DeviceParams& params, const PumpDrive& drive) {
    const auto roots = solve_pump_roots(params, drive);
    std::vector<SteadyState> out;
    out.reserve(static_cast<std::size_t>(roots.count));
    for (int k = 0; k < roots.count; ++k)
        out.push_back(make_state(params, drive, roots.values[k], k, roots.multiplicity[k] > 1));
    return out;
}

Complex reflection_coefficient(const SteadyState& state, const PumpDrive& drive) {
    if (drive.b1_in == 0.0) throw UndefinedForZeroDrive("reflection coefficient undefined for b1_in = 0");
    return state.b1_out / drive.b1_in;
}

}  // namespace kerrpa

#include "kerrpa/stripline.hpp"

#include <lapacke.h>

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "kerrpa/errors.hpp"
#include "kerrpa/kernels.hpp"

namespace kerrpa {
namespace {

std::vector<double> trapezoid_weights(const LineProfile& profile) {
    std::vector<double> w(profile.n_grid(), profile.spacing());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

std::vector<double> weighted(const std::vector<double>& weights, const std::vector<double>& samples) {
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = weights[i] * samples[i];
    return out;
}

void check_mode(const LineProfile& profile, const ModeSolution& mode) {
    if (mode.u.size() != profile.n_grid()) throw std::invalid_argument("mode was solved on a different grid");
}

double int_u4(const LineProfile& profile, const std::vector<double>& a, const std::vector<double>& b,
              const std::vector<double>& density) {
    const auto w = weighted(trapezoid_weights(profile), density);
    return simd::kernels().moment4(a.data(), b.data(), w.data(), a.size());
}

}  // namespace

void validate(const LineProfile& p) {
    if (!(p.length > 0.0) || !std::isfinite(p.length)) throw ConfigError("/l", "line length must be finite and > 0");
    if (!(p.I_c > 0.0)) throw ConfigError("/I_c", "critical current must be > 0");
    if (!(p.hbar > 0.0)) throw ConfigError("/hbar", "hbar must be > 0");
    const std::size_t n = p.C.size();
    if (n < 16) throw ConfigError("/grid", "grid must have at least 16 nodes");
    const std::pair<const char*, const std::vector<double>*> arrays[] = {
        {"/C", &p.C}, {"/L0", &p.L0}, {"/dL", &p.dL}, {"/R0", &p.R0}, {"/dR", &p.dR}};
    for (const auto& [name, values] : arrays) {
        if (values->size() != n) throw ConfigError(name, "array length differs from the grid size");
        const bool positive = name == std::string_view("/C") || name == std::string_view("/L0");
        for (std::size_t i = 0; i < n; ++i) {
            const double v = (*values)[i];
            if (!std::isfinite(v) || (positive ? !(v > 0.0) : v < 0.0))
                throw ConfigError(std::string(name) + "/" + std::to_string(i),
                                  positive ? "sample must be > 0" : "sample must be >= 0");
        }
    }
}

LineProfile uniform_profile(double length, std::size_t n_grid, double C, double L0, double dL, double R0, double dR,
                            double I_c, double hbar) {
    LineProfile p;
    p.length = length;
    p.I_c = I_c;
    p.hbar = hbar;
    p.C.assign(n_grid, C);
    p.L0.assign(n_grid, L0);
    p.dL.assign(n_grid, dL);
    p.R0.assign(n_grid, R0);
    p.dR.assign(n_grid, dR);
    return p;
}

std::vector<ModeSolution> solve_modes(const LineProfile& p, int n_modes) {
    validate(p);
    const std::size_t n = p.n_grid();
    if (n_modes < 1 || static_cast<std::size_t>(n_modes) > n / 4)
        throw ResolutionError("requested " + std::to_string(n_modes) + " modes on a " + std::to_string(n) +
                              "-node grid; at most n_grid/4 are resolved");

    // Interior nodes 1..n-2. Stiffness uses 1/C averaged onto the midpoints;
    // scaling by the diagonal L0 mass gives a symmetric tridiagonal matrix.
    const std::size_t m = n - 2;
    const double h = p.spacing();
    const double h2 = h * h;
    std::vector<double> inv_c_mid(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) inv_c_mid[j] = 0.5 * (1.0 / p.C[j] + 1.0 / p.C[j + 1]);

    std::vector<double> diag(m), off(m > 1 ? m - 1 : 1);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = k + 1;
        diag[k] = (inv_c_mid[j - 1] + inv_c_mid[j]) / (h2 * p.L0[j]);
        if (k + 1 < m) off[k] = -inv_c_mid[j] / (h2 * std::sqrt(p.L0[j] * p.L0[j + 1]));
    }

    lapack_int found = 0;
    std::vector<double> eigenvalues(m);
    std::vector<double> vectors(m * static_cast<std::size_t>(n_modes));
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n_modes));
    const lapack_int info =
        LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', static_cast<lapack_int>(m), diag.data(), off.data(), 0.0, 0.0, 1,
                       n_modes, 0.0, &found, eigenvalues.data(), vectors.data(), static_cast<lapack_int>(m),
                       support.data());
    if (info != 0 || found != n_modes) throw Error("tridiagonal eigensolver failed (info " + std::to_string(info) + ")");

    std::vector<ModeSolution> modes(static_cast<std::size_t>(n_modes));
    for (int k = 0; k < n_modes; ++k) {
        auto& mode = modes[static_cast<std::size_t>(k)];
        mode.n = k + 1;
        mode.omega = std::sqrt(std::max(eigenvalues[static_cast<std::size_t>(k)], 0.0));
        mode.u.assign(n, 0.0);
        const double* y = vectors.data() + static_cast<std::size_t>(k) * m;
        // first nonzero interior sample fixes u'(0) > 0
        double sign = 1.0;
        for (std::size_t i = 0; i < m; ++i)
            if (y[i] != 0.0) {
                sign = y[i] > 0.0 ? 1.0 : -1.0;
                break;
            }
        // unit Euclidean y maps to h sum L0 u^2 = 1
        for (std::size_t i = 0; i < m; ++i) mode.u[i + 1] = sign * y[i] / std::sqrt(h * p.L0[i + 1]);
    }
    return modes;
}

double trapezoid(const LineProfile& profile, std::span<const double> f) {
    if (f.size() != profile.n_grid()) throw std::invalid_argument("trapezoid: sample count differs from the grid");
    double sum = 0.0;
    for (double v : f) sum += v;
    sum -= 0.5 * (f.front() + f.back());
    return sum * profile.spacing();
}

double kerr_constant(const LineProfile& p, const ModeSolution& mode) {
    check_mode(p, mode);
    return -(p.hbar * mode.omega * mode.omega / (p.I_c * p.I_c)) * int_u4(p, mode.u, mode.u, p.dL);
}

double cross_kerr(const LineProfile& p, const ModeSolution& a, const ModeSolution& b) {
    if (a.n == b.n) throw SameModeError("cross-Kerr needs two distinct modes; use kerr_constant for self-Kerr");
    check_mode(p, a);
    check_mode(p, b);
    return -(3.0 * p.hbar * a.omega * b.omega / (p.I_c * p.I_c)) * int_u4(p, a.u, b.u, p.dL);
}

double gamma2_from_profile(const LineProfile& p, const ModeSolution& mode) {
    check_mode(p, mode);
    const auto w = weighted(trapezoid_weights(p), p.R0);
    return 0.5 * simd::kernels().moment2(mode.u.data(), w.data(), w.size());
}

double gamma3_from_profile(const LineProfile& p, const ModeSolution& mode) {
    check_mode(p, mode);
    return (3.0 * p.hbar * mode.omega / (8.0 * p.I_c * p.I_c)) * int_u4(p, mode.u, mode.u, p.dR);
}

DerivedDevice derive_device(const LineProfile& profile, int mode_index, double gamma1) {
    auto modes = solve_modes(profile, mode_index);
    DerivedDevice out;
    out.mode = std::move(modes.back());
    const auto& mode = out.mode;
    out.int_u4_dL = int_u4(profile, mode.u, mode.u, profile.dL);
    out.int_u4_dR = int_u4(profile, mode.u, mode.u, profile.dR);
    const auto w = weighted(trapezoid_weights(profile), profile.R0);
    out.int_u2_R0 = simd::kernels().moment2(mode.u.data(), w.data(), w.size());
    out.params.omega0 = mode.omega;
    out.params.kerr = kerr_constant(profile, mode);
    out.params.gamma1 = gamma1;
    out.params.gamma2 = gamma2_from_profile(profile, mode);
    out.params.gamma3 = gamma3_from_profile(profile, mode);
    return out;
}

LineProfile parse_profile(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", std::string("profile is not valid JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw ConfigError("", "profile must be a JSON object");

    auto number = [&](const char* key) {
        const auto it = doc.find(key);
        if (it == doc.end()) throw ConfigError(std::string("/") + key, "missing");
        if (!it->is_number()) throw ConfigError(std::string("/") + key, "must be a number");
        return it->get<double>();
    };
    LineProfile p;
    p.length = number("l");
    p.I_c = number("I_c");
    p.hbar = number("hbar");
    const auto grid_it = doc.find("grid");
    if (grid_it == doc.end() || !grid_it->is_number_integer() || grid_it->get<long long>() < 0)
        throw ConfigError("/grid", "must be a nonnegative integer");
    const auto n = static_cast<std::size_t>(grid_it->get<long long>());

    auto array = [&](const char* key) {
        const std::string ptr = std::string("/") + key;
        const auto it = doc.find(key);
        if (it == doc.end()) throw ConfigError(ptr, "missing");
        if (!it->is_array()) throw ConfigError(ptr, "must be an array");
        if (it->size() != n)
            throw ConfigError(ptr, "has " + std::to_string(it->size()) + " samples, grid is " + std::to_string(n));
        std::vector<double> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(*it)[i].is_number()) throw ConfigError(ptr + "/" + std::to_string(i), "must be a number");
            out.push_back((*it)[i].get<double>());
        }
        return out;
    };
    p.C = array("C");
    p.L0 = array("L0");
    p.dL = array("dL");
    p.R0 = array("R0");
    p.dR = array("dR");
    validate(p);
    return p;
}

LineProfile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open profile " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

}  // namespace kerrpa

#include "kerrpa/operating_points.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "kerrpa/cubic.hpp"
#include "kerrpa/errors.hpp"

namespace kerrpa {
namespace {

constexpr int kLocusGrid = 4096;
constexpr double kTangencyTolerance = 1e-9;

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi || hi - lo <= 1e-13 * std::abs(mid)) break;
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Minimum {
    double x, value;
};

Minimum golden_minimum(const std::function<double(double)>& f, double lo, double hi) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::abs(hi); ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

}  // namespace

double response_peak_detuning(const DeviceParams& params, double E) {
    return params.omega0 + params.kerr * E;
}

std::vector<LocusPoint> instability_locus(const DeviceParams& p, const PumpDrive& d) {
    if (!(p.gamma() > 0.0)) throw DegenerateModel("total linear damping gamma1 + gamma2 must be > 0");
    const double drive_term = 2.0 * p.gamma1 * d.b1_in * d.b1_in;
    if (drive_term <= 0.0) return {};

    const double g = p.gamma();
    // Largest E on the curve: the peak, where (g + g3 E)^2 E = drive_term.
    const double e_max = bisect([&](double E) { return E * (g + p.gamma3 * E) * (g + p.gamma3 * E) - drive_term; },
                                0.0, drive_term / (g * g));

    std::vector<LocusPoint> points;
    for (const int side : {-1, 1}) {
        // The curve is single valued in E on each side of the peak.
        auto detuning = [&](double E) {
            const double damp = g + p.gamma3 * E;
            return -p.kerr * E + side * std::sqrt(std::max(drive_term / E - damp * damp, 0.0));
        };
        auto fold = [&](double E) {
            const double det = detuning(E);
            const double re_w = g + 2.0 * p.gamma3 * E;
            const double im_w = det + 2.0 * p.kerr * E;
            return re_w * re_w + im_w * im_w - (p.kerr * p.kerr + p.gamma3 * p.gamma3) * E * E;
        };
        auto scale = [&](double E) {
            const double det = detuning(E);
            return g * g + det * det + (p.kerr * p.kerr + p.gamma3 * p.gamma3) * E * E;
        };

        std::vector<double> grid(kLocusGrid - 1), values(kLocusGrid - 1);
        for (int i = 0; i < kLocusGrid - 1; ++i) {
            grid[i] = e_max * (i + 1) / kLocusGrid;
            values[i] = fold(grid[i]);
        }

        std::vector<double> found;
        for (int i = 0; i + 1 < kLocusGrid - 1; ++i)
            if ((values[i] > 0.0) != (values[i + 1] > 0.0)) found.push_back(bisect(fold, grid[i], grid[i + 1]));

        for (int i = 1; i + 1 < kLocusGrid - 1; ++i) {
            if (!(values[i] > 0.0 && values[i - 1] > values[i] && values[i + 1] >= values[i])) continue;
            const auto m = golden_minimum(fold, grid[i - 1], grid[i + 1]);
            if (m.value <= 0.0) {
                // negative dip narrower than the grid
                found.push_back(bisect(fold, grid[i - 1], m.x));
                found.push_back(bisect(fold, m.x, grid[i + 1]));
            } else if (m.value <= kTangencyTolerance * scale(m.x)) {
                found.push_back(m.x);
            }
        }

        std::sort(found.begin(), found.end());
        // Two folds closer than the root-cluster resolution are one tangency.
        std::vector<double> merged;
        for (std::size_t k = 0; k < found.size(); ++k) {
            if (k + 1 < found.size() && found[k + 1] - found[k] <= kClusterTolerance * found[k + 1]) {
                merged.push_back(golden_minimum(fold, found[k], found[k + 1]).x);
                ++k;
            } else {
                merged.push_back(found[k]);
            }
        }
        for (double E : merged) points.push_back({p.omega0 - detuning(E), E});
    }
    std::sort(points.begin(), points.end(), [](const LocusPoint& a, const LocusPoint& b) { return a.omega_p < b.omega_p; });
    return points;
}

CriticalPoint critical_point(const DeviceParams& p) {
    CriticalPoint cp;
    const double abs_k = std::abs(p.kerr);
    const double sqrt3 = std::sqrt(3.0);
    const double margin = abs_k - sqrt3 * p.gamma3;
    if (!(margin > 0.0)) return cp;

    const double g = p.gamma();
    const double k2g2 = p.kerr * p.kerr + p.gamma3 * p.gamma3;
    cp.exists = true;
    cp.ill_conditioned = margin < 1e-9 * abs_k;
    cp.E_c = 2.0 * g / (sqrt3 * margin);
    const double sign_k = p.kerr > 0.0 ? 1.0 : -1.0;
    const double detuning =
        -g * sign_k * (4.0 * p.gamma3 * abs_k + sqrt3 * k2g2) / (p.kerr * p.kerr - 3.0 * p.gamma3 * p.gamma3);
    cp.omega_p_c = p.omega0 - detuning;
    cp.b1c_in = p.gamma1 > 0.0
                    ? std::sqrt(4.0 / (3.0 * sqrt3) * g * g * g * k2g2 / (p.gamma1 * margin * margin * margin))
                    : std::numeric_limits<double>::infinity();
    return cp;
}

}  // namespace kerrpa

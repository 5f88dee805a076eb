#include "kerrpa/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kerrpa {
namespace {

struct Monic {
    double a, b, c;  // x^3 + a x^2 + b x + c

    double value(double x) const noexcept { return ((x + a) * x + b) * x + c; }
    double slope(double x) const noexcept { return (3.0 * x + 2.0 * a) * x + b; }
};

double polish(const Monic& p, double x) {
    double fx = p.value(x);
    for (int it = 0; it < 4 && fx != 0.0; ++it) {
        const double d = p.slope(x);
        if (d == 0.0 || !std::isfinite(d)) break;
        const double next = x - fx / d;
        const double fn = p.value(next);
        if (!(std::abs(fn) < std::abs(fx))) break;
        x = next;
        fx = fn;
    }
    return x;
}

class RootSet {
public:
    void add(double x, int mult) {
        out_.values[out_.count] = x;
        out_.multiplicity[out_.count] = mult;
        ++out_.count;
    }
    CubicRoots sorted() {
        // insertion sort on at most three entries, carrying multiplicities
        for (int i = 1; i < out_.count; ++i)
            for (int j = i; j > 0 && out_.values[j] < out_.values[j - 1]; --j) {
                std::swap(out_.values[j], out_.values[j - 1]);
                std::swap(out_.multiplicity[j], out_.multiplicity[j - 1]);
            }
        return out_;
    }

private:
    CubicRoots out_;
};

// x^2 + a x + b
void solve_monic_quadratic(double a, double b, RootSet& out) {
    const double scale = std::max(std::abs(a), std::sqrt(std::abs(b)));
    if (scale == 0.0) {
        out.add(0.0, 2);
        return;
    }
    const double disc = a * a - 4.0 * b;
    if (disc < 0.0) {
        if (std::sqrt(-disc) / 2.0 <= kComplexTolerance * scale) out.add(-a / 2.0, 2);
        return;
    }
    const double q = -0.5 * (a + std::copysign(std::sqrt(disc), a));
    const double r1 = q;
    const double r2 = q != 0.0 ? b / q : 0.0;
    if (std::abs(r1 - r2) <= kComplexTolerance * scale) {
        out.add(0.5 * (r1 + r2), 2);
    } else {
        out.add(r1, 1);
        out.add(r2, 1);
    }
}

CubicRoots solve_monic(const Monic& p) {
    RootSet out;
    if (p.c == 0.0) {
        // x (x^2 + a x + b)
        RootSet rest;
        solve_monic_quadratic(p.a, p.b, rest);
        const auto q = rest.sorted();
        bool merged = false;
        for (int i = 0; i < q.count; ++i) {
            if (q.values[i] == 0.0) {
                out.add(0.0, q.multiplicity[i] + 1);
                merged = true;
            } else {
                out.add(q.values[i], q.multiplicity[i]);
            }
        }
        if (!merged) out.add(0.0, 1);
        return out.sorted();
    }

    const double a3 = p.a / 3.0;
    const double Q = (p.a * p.a - 3.0 * p.b) / 9.0;
    const double R = p.a * (2.0 * p.a * p.a - 9.0 * p.b) / 54.0 + p.c / 2.0;
    const double Q3 = Q * Q * Q;
    const double R2 = R * R;

    if (R2 < Q3) {
        const double sq = std::sqrt(Q);
        const double theta = std::acos(std::clamp(R / (sq * sq * sq), -1.0, 1.0));
        std::array<double, 3> x{};
        for (int k = 0; k < 3; ++k)
            x[k] = -2.0 * sq * std::cos((theta + 2.0 * std::numbers::pi * k) / 3.0) - a3;
        std::sort(x.begin(), x.end());
        const double scale = std::max(std::abs(x[0]), std::abs(x[2]));
        if (x[2] - x[0] <= kClusterTolerance * scale) {
            out.add(-a3, 3);
            return out.sorted();
        }
        for (auto& xi : x) xi = polish(p, xi);
        std::sort(x.begin(), x.end());
        if (x[1] - x[0] <= kComplexTolerance * scale) {
            out.add(0.5 * (x[0] + x[1]), 2);
            out.add(x[2], 1);
        } else if (x[2] - x[1] <= kComplexTolerance * scale) {
            out.add(x[0], 1);
            out.add(0.5 * (x[1] + x[2]), 2);
        } else {
            for (double xi : x) out.add(xi, 1);
        }
        return out.sorted();
    }

    const double A = -std::copysign(std::cbrt(std::abs(R) + std::sqrt(R2 - Q3)), R);
    const double B = A == 0.0 ? 0.0 : Q / A;
    const double re = -0.5 * (A + B) - a3;
    const double im = 0.5 * std::sqrt(3.0) * (A - B);
    double x1 = A + B - a3;
    const double pair_mod2 = re * re + im * im;
    // A + B and a/3 nearly cancel when the real root is much smaller than the
    // pair; Vieta (x1 |z|^2 = -c) is then the well-conditioned route.
    if (pair_mod2 > 0.0 && std::abs(x1) < 1e-3 * std::abs(a3)) x1 = -p.c / pair_mod2;
    const double scale = std::max({std::abs(x1), std::sqrt(pair_mod2)});
    if (std::hypot(x1 - re, im) <= kClusterTolerance * scale) {
        out.add(-a3, 3);
        return out.sorted();
    }
    out.add(polish(p, x1), 1);
    if (std::abs(im) <= kComplexTolerance * scale) out.add(polish(p, re), 2);
    return out.sorted();
}

}  // namespace

CubicRoots solve_real_cubic(double c3, double c2, double c1, double c0) {
    if (c3 != 0.0) return solve_monic({c2 / c3, c1 / c3, c0 / c3});
    RootSet out;
    if (c2 != 0.0) {
        solve_monic_quadratic(c1 / c2, c0 / c2, out);
        return out.sorted();
    }
    if (c1 != 0.0) {
        out.add(-c0 / c1, 1);
        return out.sorted();
    }
    if (c0 != 0.0) return out.sorted();
    throw std::invalid_argument("solve_real_cubic: all coefficients are zero");
}

}  // namespace kerrpa

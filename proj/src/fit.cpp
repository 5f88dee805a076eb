#include "kerrpa/fit.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "kerrpa/pump.hpp"
#include "kerrpa/small_signal.hpp"

namespace kerrpa {
namespace {

constexpr double kPenalty = 1e300;

double& field(DeviceParams& p, FitParam which) {
    switch (which) {
        case FitParam::omega0: return p.omega0;
        case FitParam::kerr: return p.kerr;
        case FitParam::gamma1: return p.gamma1;
        case FitParam::gamma2: return p.gamma2;
        case FitParam::gamma3: return p.gamma3;
    }
    return p.omega0;
}

// Bounded parameters through p = lo + (hi - lo) (1 + sin z) / 2.
struct Transform {
    const FitProblem* problem;

    DeviceParams params(const gsl_vector* z) const {
        DeviceParams p = problem->initial;
        for (std::size_t i = 0; i < problem->free.size(); ++i) {
            const auto& f = problem->free[i];
            field(p, f.param) = f.lo + (f.hi - f.lo) * 0.5 * (1.0 + std::sin(gsl_vector_get(z, i)));
        }
        return p;
    }

    double to_internal(const FreeParam& f, double value) const {
        if (f.hi == f.lo) return 0.0;
        return std::asin(std::clamp(2.0 * (value - f.lo) / (f.hi - f.lo) - 1.0, -1.0, 1.0));
    }
};

struct Objective {
    Transform transform;
    long evaluations = 0;
    double best = std::numeric_limits<double>::infinity();
    DeviceParams best_params;
};

double objective(const gsl_vector* z, void* data) {
    auto& obj = *static_cast<Objective*>(data);
    ++obj.evaluations;
    const auto p = obj.transform.params(z);
    const double f = sum_of_squares(p, obj.transform.problem->data);
    if (f < obj.best) {
        obj.best = f;
        obj.best_params = p;
    }
    return f;
}

struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter>;
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;

}  // namespace

std::string_view fit_param_name(FitParam p) noexcept {
    switch (p) {
        case FitParam::omega0: return "omega0";
        case FitParam::kerr: return "kerr";
        case FitParam::gamma1: return "gamma1";
        case FitParam::gamma2: return "gamma2";
        case FitParam::gamma3: return "gamma3";
    }
    return "";
}

std::optional<FitParam> parse_fit_param(std::string_view name) noexcept {
    for (auto p : {FitParam::omega0, FitParam::kerr, FitParam::gamma1, FitParam::gamma2, FitParam::gamma3})
        if (fit_param_name(p) == name) return p;
    return std::nullopt;
}

void validate(const FitProblem& problem) {
    if (problem.data.size() < 5) throw ConfigError("/fit/observations", "at least 5 observations are required");
    if (problem.free.empty()) throw ConfigError("/fit/free", "no free parameters");
    for (const auto& f : problem.free) {
        const std::string ptr = "/fit/bounds/" + std::string(fit_param_name(f.param));
        if (!(std::isfinite(f.lo) && std::isfinite(f.hi) && f.lo <= f.hi)) throw ConfigError(ptr, "bounds must be finite with lo <= hi");
        DeviceParams copy = problem.initial;
        const double v = field(copy, f.param);
        if (v < f.lo || v > f.hi) throw ConfigError(ptr, "bounds do not contain the initial guess");
    }
    for (std::size_t i = 0; i < problem.data.size(); ++i) {
        const auto& o = problem.data[i];
        if (!(std::isfinite(o.omega_p) && std::isfinite(o.value) && o.b1_in > 0.0))
            throw ConfigError("/fit/observations/" + std::to_string(i), "needs finite omega_p, value and b1_in > 0");
    }
    if (problem.max_evaluations < 1) throw ConfigError("/fit/max_evaluations", "must be >= 1");
}

double model_value(const DeviceParams& params, const Observation& obs) {
    if (!validate(params).valid()) return std::numeric_limits<double>::quiet_NaN();
    const PumpDrive drive{obs.omega_p, obs.b1_in, 0.0};
    double best = std::numeric_limits<double>::quiet_NaN();
    for (const auto& state : steady_states(params, drive)) {
        double v = 0.0;
        if (obs.kind == Observable::reflection) {
            v = std::abs(reflection_coefficient(state, drive));
        } else {
            const auto g = intermodulation_gain(params, state, drive, obs.omega);
            if (g.diverged) continue;
            v = g.value;
        }
        if (std::isnan(best) || std::abs(v - obs.value) < std::abs(best - obs.value)) best = v;
    }
    return best;
}

double sum_of_squares(const DeviceParams& params, const std::vector<Observation>& data) {
    double sum = 0.0;
    for (const auto& obs : data) {
        const double m = model_value(params, obs);
        if (!std::isfinite(m)) return kPenalty;
        const double r = m - obs.value;
        sum += r * r;
    }
    return sum;
}

FitResult fit(const FitProblem& problem) {
    validate(problem);
    const std::size_t dim = problem.free.size();
    Objective obj{Transform{&problem}, 0, std::numeric_limits<double>::infinity(), problem.initial};

    gsl_multimin_function fn{&objective, dim, &obj};
    MinimizerPtr minimizer(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
    VectorPtr start(gsl_vector_alloc(dim));
    VectorPtr step(gsl_vector_alloc(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const auto& f = problem.free[i];
        DeviceParams copy = problem.initial;
        gsl_vector_set(start.get(), i, obj.transform.to_internal(f, field(copy, f.param)));
    }

    bool converged = false;
    double previous = std::numeric_limits<double>::infinity();
    // Restart from the best vertex until a fresh simplex no longer improves.
    for (int restart = 0; restart < 20 && obj.evaluations < problem.max_evaluations; ++restart) {
        gsl_vector_set_all(step.get(), restart == 0 ? 0.2 : 0.02);
        gsl_multimin_fminimizer_set(minimizer.get(), &fn, start.get(), step.get());
        bool settled = false;
        while (obj.evaluations < problem.max_evaluations) {
            if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
            const double size = gsl_multimin_fminimizer_size(minimizer.get());
            if (gsl_multimin_test_size(size, 1e-11) == GSL_SUCCESS) {
                settled = true;
                break;
            }
        }
        gsl_vector_memcpy(start.get(), gsl_multimin_fminimizer_x(minimizer.get()));
        const double current = minimizer->fval;
        if (settled && previous - current <= 1e-12 * std::abs(current) + 1e-300) {
            converged = true;
            break;
        }
        previous = current;
    }

    FitResult result;
    result.params = obj.best_params;
    result.evaluations = obj.evaluations;
    result.rms = std::sqrt(obj.best / static_cast<double>(problem.data.size()));
    result.converged = converged;
    if (!converged)
        throw NonConvergence("Nelder-Mead did not converge within " + std::to_string(problem.max_evaluations) +
                                 " evaluations",
                             result);
    return result;
}

}  // namespace kerrpa

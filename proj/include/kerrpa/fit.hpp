#pragma once

// Parameter extraction from measured pump reflection (and optionally
// intermodulation gain) by bounded Nelder-Mead on the sum of squared
// residuals of the forward model.

#include <optional>
#include <string_view>
#include <vector>

#include "kerrpa/device.hpp"
#include "kerrpa/errors.hpp"

namespace kerrpa {

enum class FitParam { omega0, kerr, gamma1, gamma2, gamma3 };

std::string_view fit_param_name(FitParam p) noexcept;
std::optional<FitParam> parse_fit_param(std::string_view name) noexcept;

enum class Observable { reflection, intermod_gain };

struct Observation {
    double omega_p = 0.0;
    double b1_in = 0.0;
    double value = 0.0;  ///< |b1_out / b1_in| or G_I
    Observable kind = Observable::reflection;
    double omega = 0.0;  ///< signal offset, G_I rows only
};

struct FreeParam {
    FitParam param;
    double lo, hi;
};

struct FitProblem {
    std::vector<Observation> data;
    DeviceParams initial;
    std::vector<FreeParam> free;
    long max_evaluations = 100000;
};

struct FitResult {
    DeviceParams params;
    double rms = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Budget exhausted; carries the best point found.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, FitResult best) : Error(what), best_(std::move(best)) {}
    const FitResult& best() const noexcept { return best_; }

private:
    FitResult best_;
};

/// Throws ConfigError: fewer than 5 observations, no free parameters,
/// empty or non-containing bounds.
void validate(const FitProblem& problem);

/// Forward model for one row. In multivalued regions the branch closest to
/// the observed value is used. NaN when the model is not evaluable.
double model_value(const DeviceParams& params, const Observation& obs);

double sum_of_squares(const DeviceParams& params, const std::vector<Observation>& data);

/// Deterministic for identical inputs.
FitResult fit(const FitProblem& problem);

}  // namespace kerrpa

#pragma once

// Table-producing front ends behind the CLI subcommands.

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

#include "kerrpa/config.hpp"
#include "kerrpa/table.hpp"

namespace kerrpa {

/// Calls `task(i)` for i in [0, n) on up to `threads` workers (0: hardware
/// concurrency). Results land at their index; the lowest-index exception is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F&& f) {
    std::vector<T> out(n);
    parallel_for(n, threads, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

/// omega_p, branch, E, B, phi_B, refl_mag, refl_phase, lambda0_re, lambda0_im, stable
Table run_steady_sweep(const SweepConfig& config);

/// omega_p, branch, omega, E, stable, G_S, G_I, diverged
Table run_gain_sweep(const SweepConfig& config);

/// b1_frac, p_min0, p_max0, phi_min, diverged, above_critical
Table run_squeeze_sweep(const SweepConfig& config);

/// E_c, omega_p_c, b1c_in, exists, ill_conditioned
Table run_critical(const SweepConfig& config);

/// omega0, kerr, gamma1, gamma2, gamma3, mode, int_u4_dL, int_u2_R0, int_u4_dR
Table run_line_derive(const SweepConfig& config);

/// omega0, kerr, gamma1, gamma2, gamma3, rms, evaluations, converged.
/// Throws NonConvergence (carrying the best point) when the budget runs out.
Table run_fit(const SweepConfig& config);
Table fit_table(const FitResult& result);

}  // namespace kerrpa

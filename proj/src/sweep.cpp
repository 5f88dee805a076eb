#include "kerrpa/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "kerrpa/errors.hpp"
#include "kerrpa/operating_points.hpp"
#include "kerrpa/pump.hpp"
#include "kerrpa/small_signal.hpp"

namespace kerrpa {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const DriveGrid& require_drive(const SweepConfig& config, const char* command) {
    if (!config.drive) throw ConfigError("/drive", std::string("required for ") + command);
    return *config.drive;
}

using Rows = std::vector<std::vector<Cell>>;

Table flatten(std::vector<std::string> columns, std::vector<Rows> blocks) {
    Table t{std::move(columns), {}};
    for (auto& block : blocks)
        for (auto& row : block) t.rows.push_back(std::move(row));
    return t;
}

}  // namespace

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex guard;
    std::size_t failed_at = n;
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(guard);
                if (i < failed_at) {
                    failed_at = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

Table run_steady_sweep(const SweepConfig& config) {
    const auto& drive = require_drive(config, "steady-sweep");
    const auto& params = config.device;
    auto blocks = parallel_map<Rows>(drive.omega_p.size(), config.threads, [&](std::size_t i) {
        const PumpDrive pd{drive.omega_p[i], drive.b1_in, drive.psi1};
        Rows rows;
        for (const auto& s : steady_states(params, pd)) {
            double mag = kNaN, phase = kNaN;
            if (pd.b1_in != 0.0) {
                const auto r = reflection_coefficient(s, pd);
                mag = std::abs(r);
                phase = std::arg(r);
            }
            rows.push_back({pd.omega_p, static_cast<long long>(s.branch_index), s.E, s.B, s.phi_B, mag, phase,
                            s.lambda0.real(), s.lambda0.imag(), s.stable});
        }
        return rows;
    });
    return flatten({"omega_p", "branch", "E", "B", "phi_B", "refl_mag", "refl_phase", "lambda0_re", "lambda0_im",
                    "stable"},
                   std::move(blocks));
}

Table run_gain_sweep(const SweepConfig& config) {
    const auto& drive = require_drive(config, "gain-sweep");
    const auto& params = config.device;
    const auto& offsets = config.offsets;
    auto blocks = parallel_map<Rows>(drive.omega_p.size(), config.threads, [&](std::size_t i) {
        const PumpDrive pd{drive.omega_p[i], drive.b1_in, drive.psi1};
        Rows rows;
        std::vector<double> g_s(offsets.size()), g_i(offsets.size());
        for (const auto& s : steady_states(params, pd)) {
            gain_spectrum(params, s, pd, offsets, g_s, g_i);
            for (std::size_t k = 0; k < offsets.size(); ++k)
                rows.push_back({pd.omega_p, static_cast<long long>(s.branch_index), offsets[k], s.E, s.stable,
                                g_s[k], g_i[k], std::isinf(g_s[k]) || std::isinf(g_i[k])});
        }
        return rows;
    });
    return flatten({"omega_p", "branch", "omega", "E", "stable", "G_S", "G_I", "diverged"}, std::move(blocks));
}

Table run_squeeze_sweep(const SweepConfig& config) {
    if (config.pump_fractions.empty()) throw ConfigError("/pump_fractions", "required for squeeze-sweep");
    if (!critical_point(config.device).exists) throw ConfigError("/device", "squeeze-sweep needs a critical point");
    const auto& fractions = config.pump_fractions;
    auto rows = parallel_map<SqueezeRow>(fractions.size(), config.threads, [&](std::size_t i) {
        return squeeze_vs_pump(config.device, config.env, std::span(&fractions[i], 1)).front();
    });
    Table t{{"b1_frac", "p_min0", "p_max0", "phi_min", "diverged", "above_critical"}, {}};
    for (const auto& r : rows) t.rows.push_back({r.b1_frac, r.p_min0, r.p_max0, r.phi_min, r.diverged, r.above_critical});
    return t;
}

Table run_critical(const SweepConfig& config) {
    const auto cp = critical_point(config.device);
    return {{"E_c", "omega_p_c", "b1c_in", "exists", "ill_conditioned"},
            {{cp.E_c, cp.omega_p_c, cp.b1c_in, cp.exists, cp.ill_conditioned}}};
}

Table run_line_derive(const SweepConfig& config) {
    if (!config.profile) throw ConfigError("/device/profile", "required for line-derive");
    const auto& d = config.profile->derived;
    return {{"omega0", "kerr", "gamma1", "gamma2", "gamma3", "mode", "int_u4_dL", "int_u2_R0", "int_u4_dR"},
            {{d.params.omega0, d.params.kerr, d.params.gamma1, d.params.gamma2, d.params.gamma3,
              static_cast<long long>(config.profile->mode), d.int_u4_dL, d.int_u2_R0, d.int_u4_dR}}};
}

Table fit_table(const FitResult& r) {
    return {{"omega0", "kerr", "gamma1", "gamma2", "gamma3", "rms", "evaluations", "converged"},
            {{r.params.omega0, r.params.kerr, r.params.gamma1, r.params.gamma2, r.params.gamma3, r.rms,
              static_cast<long long>(r.evaluations), r.converged}}};
}

Table run_fit(const SweepConfig& config) {
    if (!config.fit) throw ConfigError("/fit", "required for fit");
    const FitProblem problem{config.fit->observations, config.device, config.fit->free, config.fit->max_evaluations};
    return fit_table(fit(problem));
}

}  // namespace kerrpa

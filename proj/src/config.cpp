#include "kerrpa/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "kerrpa/errors.hpp"
#include "kerrpa/operating_points.hpp"

namespace kerrpa {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHbar = 1.054571817e-34;
constexpr double kBoltzmann = 1.380649e-23;

std::string at(const std::string& ptr, std::string_view key) { return ptr + "/" + std::string(key); }
std::string at(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

double number(const json& j, const std::string& ptr) {
    if (!j.is_number()) throw ConfigError(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(ptr, "must be finite");
    return v;
}

double number_or(const json& obj, std::string_view key, const std::string& ptr, double fallback) {
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : number(*it, at(ptr, key));
}

long integer(const json& j, const std::string& ptr) {
    if (!j.is_number_integer()) throw ConfigError(ptr, "expected an integer");
    return j.get<long>();
}

void require_object(const json& j, const std::string& ptr) {
    if (!j.is_object()) throw ConfigError(ptr, "expected an object");
}

void reject_unknown(const json& obj, const std::string& ptr, std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || k == key;
        if (!ok) throw ConfigError(at(ptr, key), "unknown key");
    }
}

// Theta accepts "inf" or null for a zero-temperature bath.
double theta_value(const json& j, const std::string& ptr) {
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "inf")) return kInf;
    if (!j.is_number()) throw ConfigError(ptr, "expected a number, \"inf\" or null");
    const double v = j.get<double>();
    if (!(v > 0.0)) throw ConfigError(ptr, "must be > 0");
    return v;
}

std::vector<double> number_list(const json& j, const std::string& ptr) {
    if (!j.is_array() || j.empty()) throw ConfigError(ptr, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(ptr, i)));
    return out;
}

void apply_device_fields(const json& j, const std::string& ptr, DeviceParams& p) {
    p.omega0 = number_or(j, "omega0", ptr, p.omega0);
    p.kerr = number_or(j, "kerr", ptr, p.kerr);
    p.gamma1 = number_or(j, "gamma1", ptr, p.gamma1);
    p.gamma2 = number_or(j, "gamma2", ptr, p.gamma2);
    p.gamma3 = number_or(j, "gamma3", ptr, p.gamma3);
    p.phi1 = number_or(j, "phi1", ptr, p.phi1);
    p.phi2 = number_or(j, "phi2", ptr, p.phi2);
    p.phi3 = number_or(j, "phi3", ptr, p.phi3);
}

void check_device(const DeviceParams& p, const std::string& ptr) {
    const auto report = validate(p);
    if (!report.valid()) throw ConfigError(ptr, report.violations.front());
}

ProfileSource parse_profile_source(const json& j, const std::string& ptr, const std::filesystem::path& base_dir) {
    ProfileSource src;
    const auto& path = j.at("profile");
    if (!path.is_string()) throw ConfigError(at(ptr, "profile"), "expected a path string");
    src.path = path.get<std::string>();
    if (src.path.is_relative()) src.path = base_dir / src.path;
    if (j.contains("mode")) src.mode = static_cast<int>(integer(j["mode"], at(ptr, "mode")));
    if (src.mode < 1) throw ConfigError(at(ptr, "mode"), "must be >= 1");
    if (!j.contains("gamma1")) throw ConfigError(at(ptr, "gamma1"), "required with a profile");
    src.gamma1 = number(j["gamma1"], at(ptr, "gamma1"));
    if (src.gamma1 < 0.0) throw ConfigError(at(ptr, "gamma1"), "must be >= 0");
    src.profile = load_profile(src.path);
    src.derived = derive_device(src.profile, src.mode, src.gamma1);
    return src;
}

std::vector<double> omega_grid(const json& j, const std::string& ptr, const DeviceParams& device) {
    if (j.is_string()) {
        if (j.get<std::string>() != "critical") throw ConfigError(ptr, "the only named grid is \"critical\"");
        const auto cp = critical_point(device);
        if (!cp.exists) throw ConfigError(ptr, "no critical point for this device");
        return {cp.omega_p_c};
    }
    if (j.is_array()) return number_list(j, ptr);
    require_object(j, ptr);
    reject_unknown(j, ptr, {"start", "stop", "count"});
    for (auto key : {"start", "stop", "count"})
        if (!j.contains(key)) throw ConfigError(at(ptr, key), "required");
    const double start = number(j["start"], at(ptr, "start"));
    const double stop = number(j["stop"], at(ptr, "stop"));
    const long count = integer(j["count"], at(ptr, "count"));
    if (count < 2) throw ConfigError(at(ptr, "count"), "grid counts must be >= 2");
    if (count > 100000000) throw ConfigError(at(ptr, "count"), "grid too large");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] =
            i == count - 1 ? stop : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    return grid;
}

double drive_amplitude(const json& j, const std::string& ptr, const DeviceParams& device) {
    if (j.is_object()) {
        reject_unknown(j, ptr, {"times_critical"});
        if (!j.contains("times_critical")) throw ConfigError(at(ptr, "times_critical"), "required");
        const double f = number(j["times_critical"], at(ptr, "times_critical"));
        if (f < 0.0) throw ConfigError(at(ptr, "times_critical"), "must be >= 0");
        const auto cp = critical_point(device);
        if (!cp.exists || !std::isfinite(cp.b1c_in))
            throw ConfigError(ptr, "fractions of the critical drive need a critical point");
        return f * cp.b1c_in;
    }
    const double b = number(j, ptr);
    if (b < 0.0) throw ConfigError(ptr, "must be >= 0");
    return b;
}

ThermalEnv parse_env(const json& j, const std::string& ptr) {
    require_object(j, ptr);
    reject_unknown(j, ptr, {"theta", "temperature_K", "pump_frequency_Hz"});
    ThermalEnv env;
    if (j.contains("theta") && j.contains("temperature_K"))
        throw ConfigError(ptr, "give either theta or temperature_K, not both");
    if (j.contains("theta")) {
        const auto& t = j["theta"];
        const std::string p = at(ptr, "theta");
        if (!t.is_array() || t.size() != 3) throw ConfigError(p, "expected three entries");
        env.theta1 = theta_value(t[0], at(p, 0));
        env.theta2 = theta_value(t[1], at(p, 1));
        env.theta3 = theta_value(t[2], at(p, 2));
    } else if (j.contains("temperature_K")) {
        const auto& t = j["temperature_K"];
        const std::string p = at(ptr, "temperature_K");
        if (!t.is_array() || t.size() != 3) throw ConfigError(p, "expected three entries");
        if (!j.contains("pump_frequency_Hz")) throw ConfigError(at(ptr, "pump_frequency_Hz"), "required with temperature_K");
        const double f = number(j["pump_frequency_Hz"], at(ptr, "pump_frequency_Hz"));
        if (!(f > 0.0)) throw ConfigError(at(ptr, "pump_frequency_Hz"), "must be > 0");
        double theta[3];
        for (std::size_t i = 0; i < 3; ++i) {
            const double T = number(t[i], at(p, i));
            if (T < 0.0) throw ConfigError(at(p, i), "must be >= 0");
            theta[i] = T == 0.0 ? kInf : kHbar * 2.0 * M_PI * f / (kBoltzmann * T);
        }
        env.theta1 = theta[0];
        env.theta2 = theta[1];
        env.theta3 = theta[2];
    }
    return env;
}

FitSpec parse_fit(const json& j, const std::string& ptr, const SweepConfig& cfg) {
    require_object(j, ptr);
    reject_unknown(j, ptr, {"observations", "free", "bounds", "max_evaluations"});
    FitSpec spec;
    const std::string optr = at(ptr, "observations");
    if (!j.contains("observations") || !j["observations"].is_array())
        throw ConfigError(optr, "expected an array of observations");
    const auto& obs = j["observations"];
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const std::string p = at(optr, i);
        require_object(obs[i], p);
        reject_unknown(obs[i], p, {"omega_p", "b1_in", "value", "kind", "omega"});
        Observation o;
        if (!obs[i].contains("omega_p")) throw ConfigError(at(p, "omega_p"), "required");
        if (!obs[i].contains("value")) throw ConfigError(at(p, "value"), "required");
        o.omega_p = number(obs[i]["omega_p"], at(p, "omega_p"));
        o.value = number(obs[i]["value"], at(p, "value"));
        if (obs[i].contains("b1_in")) {
            o.b1_in = drive_amplitude(obs[i]["b1_in"], at(p, "b1_in"), cfg.device);
        } else if (cfg.drive) {
            o.b1_in = cfg.drive->b1_in;
        } else {
            throw ConfigError(at(p, "b1_in"), "required when the config has no drive");
        }
        if (obs[i].contains("kind")) {
            const auto& k = obs[i]["kind"];
            if (k == "refl") o.kind = Observable::reflection;
            else if (k == "G_I") o.kind = Observable::intermod_gain;
            else throw ConfigError(at(p, "kind"), "expected \"refl\" or \"G_I\"");
        }
        o.omega = number_or(obs[i], "omega", p, 0.0);
        spec.observations.push_back(o);
    }
    const std::string fptr = at(ptr, "free");
    if (!j.contains("free") || !j["free"].is_array()) throw ConfigError(fptr, "expected an array of parameter names");
    const auto& bounds = j.contains("bounds") ? j["bounds"] : json::object();
    require_object(bounds, at(ptr, "bounds"));
    for (std::size_t i = 0; i < j["free"].size(); ++i) {
        const auto& name = j["free"][i];
        const auto param = name.is_string() ? parse_fit_param(name.get<std::string>()) : std::nullopt;
        if (!param) throw ConfigError(at(fptr, i), "expected one of omega0, kerr, gamma1, gamma2, gamma3");
        const std::string bptr = at(at(ptr, "bounds"), fit_param_name(*param));
        const auto it = bounds.find(std::string(fit_param_name(*param)));
        if (it == bounds.end() || !it->is_array() || it->size() != 2) throw ConfigError(bptr, "expected [lo, hi]");
        spec.free.push_back({*param, number((*it)[0], at(bptr, 0)), number((*it)[1], at(bptr, 1))});
    }
    if (j.contains("max_evaluations")) spec.max_evaluations = integer(j["max_evaluations"], at(ptr, "max_evaluations"));
    FitProblem problem{spec.observations, cfg.device, spec.free, spec.max_evaluations};
    validate(problem);
    return spec;
}

std::string describe_syntax_error(std::string_view text, std::size_t byte, const std::string& what) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
    return "config syntax error at byte " + std::to_string(byte) + " (line " + std::to_string(line) + "): " + what;
}

}  // namespace

std::optional<DeviceParams> preset_device(std::string_view name) {
    DeviceParams p;
    if (name == "fig2") {
        p.kerr = -1e-4;
        p.gamma1 = 0.01;
        p.gamma2 = 0.011;
        p.gamma3 = 0.01 * std::abs(p.kerr) / std::sqrt(3.0);
        return p;
    }
    p.kerr = 5.0;
    p.gamma1 = 1e-4;
    if (name == "fig3_lossless") return p;
    if (name == "fig3_linear_loss") {
        p.gamma2 = 5.0 * p.gamma1;
        return p;
    }
    if (name == "fig3_nonlinear_loss") {
        p.gamma3 = 0.5 * p.kerr / std::sqrt(3.0);
        return p;
    }
    return std::nullopt;
}

std::vector<std::string_view> preset_names() {
    return {"fig2", "fig3_lossless", "fig3_linear_loss", "fig3_nonlinear_loss"};
}

SweepConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", describe_syntax_error(json_text, e.byte, e.what()), e.byte);
    }
    const std::string root;
    require_object(doc, root);
    reject_unknown(doc, root,
                   {"schema", "preset", "device", "drive", "env", "offsets", "signal_frequencies", "pump_fractions",
                    "format", "out", "threads", "fit"});
    if (!doc.contains("schema")) throw ConfigError("/schema", "required");
    if (!doc["schema"].is_number_integer() || doc["schema"].get<long>() != 1)
        throw ConfigError("/schema", "unsupported schema version (expected 1)");

    SweepConfig cfg;
    bool have_device = false;
    if (doc.contains("preset")) {
        const auto& name = doc["preset"];
        const auto p = name.is_string() ? preset_device(name.get<std::string>()) : std::nullopt;
        if (!p) throw ConfigError("/preset", "unknown preset");
        cfg.device = *p;
        have_device = true;
        if (name.get<std::string>() != "fig2") {
            cfg.pump_fractions.clear();
            for (int i = 0; i <= 100; ++i) cfg.pump_fractions.push_back(i / 100.0);
        }
    }
    if (doc.contains("device")) {
        const auto& dev = doc["device"];
        require_object(dev, "/device");
        if (dev.contains("profile")) {
            reject_unknown(dev, "/device", {"profile", "mode", "gamma1"});
            cfg.profile = parse_profile_source(dev, "/device", base_dir);
            cfg.device = cfg.profile->derived.params;
        } else {
            reject_unknown(dev, "/device",
                           {"omega0", "kerr", "gamma1", "gamma2", "gamma3", "phi1", "phi2", "phi3"});
            apply_device_fields(dev, "/device", cfg.device);
        }
        have_device = true;
    }
    if (!have_device) throw ConfigError("/device", "a device or preset is required");
    check_device(cfg.device, "/device");

    if (doc.contains("drive")) {
        const auto& d = doc["drive"];
        require_object(d, "/drive");
        reject_unknown(d, "/drive", {"omega_p", "b1_in", "psi1"});
        if (!d.contains("omega_p")) throw ConfigError("/drive/omega_p", "required");
        if (!d.contains("b1_in")) throw ConfigError("/drive/b1_in", "required");
        DriveGrid grid;
        grid.omega_p = omega_grid(d["omega_p"], "/drive/omega_p", cfg.device);
        grid.b1_in = drive_amplitude(d["b1_in"], "/drive/b1_in", cfg.device);
        grid.psi1 = number_or(d, "psi1", "/drive", 0.0);
        cfg.drive = std::move(grid);
    }
    if (doc.contains("env")) cfg.env = parse_env(doc["env"], "/env");

    if (doc.contains("offsets") && doc.contains("signal_frequencies"))
        throw ConfigError("/offsets", "give either offsets or signal_frequencies, not both");
    if (doc.contains("offsets")) cfg.offsets = number_list(doc["offsets"], "/offsets");
    if (doc.contains("signal_frequencies")) {
        const auto signal = number_list(doc["signal_frequencies"], "/signal_frequencies");
        if (!cfg.drive || cfg.drive->omega_p.size() != 1)
            throw ConfigError("/signal_frequencies", "absolute signal frequencies need a single pump frequency");
        cfg.offsets.clear();
        for (double ws : signal) cfg.offsets.push_back(ws - cfg.drive->omega_p.front());
    }
    if (doc.contains("pump_fractions")) {
        cfg.pump_fractions = number_list(doc["pump_fractions"], "/pump_fractions");
        for (std::size_t i = 0; i < cfg.pump_fractions.size(); ++i)
            if (cfg.pump_fractions[i] < 0.0) throw ConfigError(at(std::string("/pump_fractions"), i), "must be >= 0");
    }
    if (doc.contains("format")) {
        if (!doc["format"].is_string()) throw ConfigError("/format", "expected \"csv\" or \"json\"");
        cfg.format = parse_format(doc["format"].get<std::string>());
    }
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) throw ConfigError("/out", "expected a path string");
        cfg.out = std::filesystem::path(doc["out"].get<std::string>());
        if (cfg.out->is_relative()) cfg.out = base_dir / *cfg.out;
    }
    if (doc.contains("threads")) {
        const long t = integer(doc["threads"], "/threads");
        if (t < 0 || t > 1024) throw ConfigError("/threads", "must be in [0, 1024]");
        cfg.threads = static_cast<unsigned>(t);
    }
    if (doc.contains("fit")) cfg.fit = parse_fit(doc["fit"], "/fit", cfg);
    return cfg;
}

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read config " + path.string());
    return parse_config(buffer.str(), path.parent_path());
}

}  // namespace kerrpa

#pragma once

// JSON sweep configuration ("schema": 1).

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kerrpa/device.hpp"
#include "kerrpa/fit.hpp"
#include "kerrpa/homodyne.hpp"
#include "kerrpa/stripline.hpp"
#include "kerrpa/table.hpp"

namespace kerrpa {

/// Named parameter sets: "fig2", "fig3_lossless", "fig3_linear_loss",
/// "fig3_nonlinear_loss".
std::optional<DeviceParams> preset_device(std::string_view name);
std::vector<std::string_view> preset_names();

struct ProfileSource {
    std::filesystem::path path;
    int mode = 1;
    double gamma1 = 0.0;
    LineProfile profile;
    DerivedDevice derived;
};

struct DriveGrid {
    std::vector<double> omega_p;
    double b1_in = 0.0;
    double psi1 = 0.0;
};

struct FitSpec {
    std::vector<Observation> observations;
    std::vector<FreeParam> free;
    long max_evaluations = 100000;
};

struct SweepConfig {
    DeviceParams device;
    std::optional<ProfileSource> profile;
    std::optional<DriveGrid> drive;
    ThermalEnv env;
    std::vector<double> offsets{0.0};
    std::vector<double> pump_fractions;
    std::optional<FitSpec> fit;
    Format format = Format::csv;
    std::optional<std::filesystem::path> out;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

/// `base_dir` resolves relative profile paths. Value errors throw ConfigError
/// with a JSON pointer; syntax errors carry the byte offset.
SweepConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

/// Throws IoError when the file cannot be read.
SweepConfig load_config(const std::filesystem::path& path);

}  // namespace kerrpa

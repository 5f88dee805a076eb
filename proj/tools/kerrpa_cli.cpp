// kerrpa: sweeps, critical point, line derivation and fitting from a JSON config.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <utility>
#include <string>

#include "kerrpa/config.hpp"
#include "kerrpa/errors.hpp"
#include "kerrpa/fit.hpp"
#include "kerrpa/sweep.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4 };

struct Options {
    std::string config;
    std::string out;
    std::string format;
};

void emit(const std::string& text, const std::optional<std::filesystem::path>& out) {
    if (!out) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw kerrpa::IoError("cannot write to stdout");
        return;
    }
    std::ofstream file(*out, std::ios::binary | std::ios::trunc);
    if (!file) throw kerrpa::IoError("cannot open " + out->string() + " for writing");
    file << text;
    file.close();
    if (!file) throw kerrpa::IoError("cannot write " + out->string());
}

int run(const std::string& command, const Options& opts) {
    auto config = kerrpa::load_config(opts.config);
    if (!opts.format.empty()) config.format = kerrpa::parse_format(opts.format);
    if (!opts.out.empty()) config.out = std::filesystem::path(opts.out);

    using Runner = kerrpa::Table (*)(const kerrpa::SweepConfig&);
    static const std::map<std::string, Runner> runners{
        {"steady-sweep", &kerrpa::run_steady_sweep}, {"gain-sweep", &kerrpa::run_gain_sweep},
        {"squeeze-sweep", &kerrpa::run_squeeze_sweep}, {"critical", &kerrpa::run_critical},
        {"line-derive", &kerrpa::run_line_derive},     {"fit", &kerrpa::run_fit},
    };
    try {
        emit(kerrpa::render(runners.at(command)(config), config.format), config.out);
    } catch (const kerrpa::NonConvergence& e) {
        emit(kerrpa::render(kerrpa::fit_table(e.best()), config.format), config.out);
        throw;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kerr parametric amplifier model: steady state, gain, squeezing, line derivation, fitting"};
    app.require_subcommand(1, 1);
    Options opts;
    const std::pair<const char*, const char*> commands[] = {
        {"steady-sweep", "steady-state branches over a pump-frequency grid"},
        {"gain-sweep", "signal and intermodulation gain per branch and offset"},
        {"squeeze-sweep", "zero-offset homodyne extrema versus pump fraction"},
        {"critical", "critical point of the bistable response"},
        {"line-derive", "resonator parameters from a transmission-line profile"},
        {"fit", "least-squares fit of device parameters to observations"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config, "JSON configuration")->required();
        sub->add_option("--out", opts.out, "output path (default stdout)");
        sub->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, opts);
    } catch (const kerrpa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const kerrpa::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const kerrpa::NonConvergence& e) {
        std::cerr << "did not converge: " << e.what() << '\n';
        return kNumeric;
    } catch (const kerrpa::Error& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    }
}

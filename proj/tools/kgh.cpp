#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kgh/cli.hpp"
#include "kgh/errors.hpp"

namespace {

struct Flags {
    std::string config;
    kgh::cli::FlagMap values;
};

void add_common(CLI::App* sub, Flags& flags, std::map<std::string, std::string>& raw)
{
    sub->add_option("--config", flags.config, "JSON configuration file");
    for (const char* name : {"V0", "beta", "m0", "m1", "hbar-c", "n-max", "l-max", "branch", "method",
                             "format", "output", "r-min", "r-max", "points"}) {
        sub->add_option(std::string("--") + name, raw[name]);
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw kgh::Error(kgh::ErrorCode::config, "cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Klein-Gordon bound states of the Hulthen potential with a position-dependent mass"};
    app.require_subcommand(1);

    Flags flags;
    std::map<std::string, std::string> raw;
    auto* spectrum = app.add_subcommand("spectrum", "energy levels for n <= n-max, l <= l-max");
    auto* wavefunction = app.add_subcommand("wavefunction", "normalized radial wavefunction on the grid");
    auto* validate = app.add_subcommand("validate", "cross-check analytic and numerical solvers");
    auto* approx = app.add_subcommand("approx-error", "exact vs approximated centrifugal term");
    for (auto* sub : {spectrum, wavefunction, validate, approx}) {
        add_common(sub, flags, raw);
    }
    for (auto* sub : {wavefunction, approx}) {
        sub->add_option("--n", raw["n"], "radial quantum number");
        sub->add_option("--l", raw["l"], "angular momentum");
    }
    approx->add_option("--betas", raw["betas"], "comma-separated screening parameters");
    spectrum->add_flag("--rest-units", raw["report_in_rest_units"], "report energies in units of m0 c^2");

    CLI11_PARSE(app, argc, argv);

    kgh::cli::Command command = kgh::cli::Command::spectrum;
    if (*wavefunction) {
        command = kgh::cli::Command::wavefunction;
    } else if (*validate) {
        command = kgh::cli::Command::validate;
    } else if (*approx) {
        command = kgh::cli::Command::approx_error;
    }

    for (const auto& [name, value] : raw) {
        if (value.empty()) {
            continue;
        }
        std::string key = name;
        std::replace(key.begin(), key.end(), '-', '_');
        flags.values[key] = value;
    }

    try {
        const std::string source = flags.config.empty() ? std::string() : read_file(flags.config);
        const kgh::cli::RunConfig cfg = kgh::cli::parse_config(source, flags.values, command);
        const kgh::cli::Table table = kgh::cli::execute(cfg);
        for (const auto& note : table.notes) {
            std::cerr << "note: " << note << '\n';
        }
        const std::string text = kgh::cli::serialize(table, cfg.format);
        if (cfg.output_path) {
            std::ofstream out(*cfg.output_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write '" << *cfg.output_path << "'\n";
                return 2;
            }
            out << text;
        } else {
            std::cout << text;
        }
        if (command == kgh::cli::Command::validate && kgh::cli::has_failures(table)) {
            return 1;
        }
    } catch (const kgh::Error& e) {
        std::cerr << "error [" << kgh::to_string(e.code()) << "]: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

// spinlock: command-line front end for the lock-in / squeezing simulations.
//
//   spinlock contrast --config setup.json --output contrast.csv
//   spinlock verify-bch
//   spinlock run --config any.json          (experiment taken from the file)

#include "spinlock/config.hpp"
#include "spinlock/errors.hpp"
#include "spinlock/run.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace {

using spinlock::config::Experiment;

// Used when no --config is given: 50 atoms and photons, squeezed and unsqueezed contrast.
constexpr const char* kDefaultConfig = R"({
  "physics": {"n_atoms": 50, "n_photons": 50, "g": 1.0, "tau": 1e-4},
  "contrast": {"unsqueezed_reference": true},
  "sensitivity": {"n_atoms": [50, 300, 500]}
})";

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<unsigned> threads;
    bool no_toggle{false};
    std::optional<std::string> integrand;
    std::optional<std::string> output;
    std::optional<std::string> format;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--seed", o.seed, "Master seed (overrides config)");
    cmd->add_option("--samples", o.samples, "Monte-Carlo samples per point")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "Worker threads (speed only; falls back to SPINLOCK_THREADS)");
    cmd->add_flag("--no-toggle", o.no_toggle, "Integrate the noise without lock-in sign flips");
    cmd->add_option("--contrast-integrand", o.integrand, "Contrast integrand")
        ->check(CLI::IsMember({"ramsey", "eq23"}));
    cmd->add_option("--output", o.output, "Output path (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

unsigned resolve_threads(const Overrides& o) {
    if (o.threads) return *o.threads == 0 ? 1 : *o.threads;
    if (const char* env = std::getenv("SPINLOCK_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid SPINLOCK_THREADS='" << env << "'\n";
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

spinlock::config::RunConfig build_config(const Overrides& o, std::optional<Experiment> experiment) {
    using namespace spinlock::config;
    RunConfig cfg = o.config_path.empty() ? parse_config(kDefaultConfig) : load_config(o.config_path);
    if (experiment) cfg.experiment = *experiment;
    if (o.seed) cfg.mc.seed = *o.seed;
    if (o.samples) cfg.mc.samples = static_cast<std::size_t>(*o.samples);
    if (o.no_toggle) cfg.lockin.toggle = false;
    if (o.integrand) cfg.mc.integrand = parse_integrand(*o.integrand);
    if (o.output) cfg.output.path = *o.output;
    if (o.format) {
        cfg.output.format = *o.format == "json" ? OutputFormat::json : OutputFormat::csv;
    } else if (o.output && o.output->ends_with(".json")) {
        cfg.output.format = OutputFormat::json;
    }
    validate(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum lock-in magnetometry with one-axis-twisting spin squeezing"};
    app.require_subcommand(1);
    app.set_version_flag("--version", spinlock::run::kVersion);

    Overrides overrides;
    std::optional<Experiment> experiment;
    bool print_only = false;

    struct Entry {
        const char* name;
        const char* help;
        std::optional<Experiment> experiment;
    };
    const Entry entries[] = {
        {"contrast", "Monte-Carlo fringe contrast versus arming time", Experiment::contrast},
        {"sensitivity", "Sensitivity versus lock-in sequence duration", Experiment::sensitivity},
        {"verify-bch", "Four-pulse squeezing unitary versus its effective OAT form", Experiment::verify_bch},
        {"oracle-compare", "Closed-form expectations versus exact Dicke evolution", Experiment::oracle_compare},
        {"noise-preview", "Time series of the synthesized noise", Experiment::noise_preview},
        {"run", "Run the experiment named in the config file", std::nullopt},
    };
    for (const Entry& e : entries) {
        CLI::App* cmd = app.add_subcommand(e.name, e.help);
        add_common_options(cmd, overrides);
        cmd->callback([&experiment, &e] { experiment = e.experiment; });
    }
    CLI::App* print = app.add_subcommand("print-config", "Print the fully defaulted config as JSON");
    add_common_options(print, overrides);
    print->callback([&print_only] { print_only = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        const spinlock::config::RunConfig cfg = build_config(overrides, experiment);
        if (print_only) {
            std::cout << spinlock::config::to_json(cfg).dump(2) << "\n";
            return 0;
        }
        return spinlock::run::run(cfg, {resolve_threads(overrides)}, std::cout, std::cerr);
    } catch (const spinlock::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const spinlock::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

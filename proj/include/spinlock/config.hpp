#pragma once

// Run configuration: JSON document -> validated RunConfig (and back).
//
// User-facing units: times in ms, g and chi in 1/ms, fields in pT, frequencies
// in Hz. Conversion to seconds happens when the lock-in layer is invoked.

#include "spinlock/noise_lockin.hpp"
#include "spinlock/oracle_compare.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinlock::config {

enum class Experiment { contrast, sensitivity, verify_bch, oracle_compare, noise_preview };
enum class OutputFormat { csv, json };
enum class NoiseUnits { pT, hz, hz2_slow };

std::string_view to_string(Experiment e);
std::string_view to_string(OutputFormat f);
std::string_view to_string(NoiseUnits u);
std::string_view to_string(lockin::Integrand i);
std::string_view to_string(lockin::Integral i);

Experiment parse_experiment(std::string_view name);
lockin::Integrand parse_integrand(std::string_view name);

struct NoiseSpec {
    NoiseUnits units{NoiseUnits::hz};
    double amplitude{0.0};
    double freq_hz{1.0};
    std::optional<double> phase;  // fixed phase in radians; absent means random

    bool operator==(const NoiseSpec&) const = default;
};

struct Physics {
    int n_atoms{0};
    int n_photons{0};
    double g{1.0};     // 1/ms
    double tau{1e-4};  // ms
    std::optional<double> chi_override;      // 1/ms
    std::optional<double> squeeze_duration;  // ms, defaults to the four free evolutions 4 tau

    // chi_override or N_s g^2 tau / 8
    double chi() const;
    double squeeze_time() const;
    // chi * squeeze_time, dimensionless
    double alpha() const;

    bool operator==(const Physics&) const = default;
};

struct LockIn {
    int n_pulses{7};
    std::vector<double> tau_arm_grid;   // ms
    std::vector<double> duration_grid;  // ms, T = (N+1) tau_arm
    bool toggle{true};
    bool bracket{true};
    lockin::Integral beta_integral{lockin::Integral::definite};

    bool operator==(const LockIn&) const = default;
};

struct MonteCarlo {
    std::size_t samples{2000};
    std::uint64_t seed{0};
    lockin::Integrand integrand{lockin::Integrand::ramsey};

    bool operator==(const MonteCarlo&) const = default;
};

struct ContrastSection {
    std::vector<int> n_atoms;       // defaults to physics.n_atoms
    bool unsqueezed_reference{false};  // also emit alpha = 0 rows
    double threshold{0.9};          // measurement range reported in the header

    bool operator==(const ContrastSection&) const = default;
};

struct SensitivitySection {
    std::vector<int> n_atoms;  // defaults to physics.n_atoms

    bool operator==(const SensitivitySection&) const = default;
};

struct VerifyBchSection {
    int n_photons{4};
    int n_atoms{4};
    std::vector<double> g_tau{1e-3, 2e-3, 5e-3, 1e-2};

    bool operator==(const VerifyBchSection&) const = default;
};

struct OracleCompareSection {
    std::vector<int> n_atoms{1, 2, 3, 4};
    std::vector<double> alpha{0.0, 0.01, 0.05};
    std::vector<double> beta{0.0, 0.3};
    std::vector<double> gamma{0.0, 0.2};
    std::vector<compare::Ordering> orderings{compare::Ordering::product};

    bool operator==(const OracleCompareSection&) const = default;
};

struct NoisePreviewSection {
    std::vector<double> t_grid;  // ms

    bool operator==(const NoisePreviewSection&) const = default;
};

struct Output {
    std::string path;  // empty: standard output
    OutputFormat format{OutputFormat::csv};

    bool operator==(const Output&) const = default;
};

struct RunConfig {
    Experiment experiment{Experiment::contrast};
    Physics physics;
    LockIn lockin;
    std::vector<NoiseSpec> noise;
    double gyro_hz_per_nt{spinlock::lockin::kDefaultGyroHzPerNt};
    MonteCarlo mc;
    ContrastSection contrast;
    SensitivitySection sensitivity;
    VerifyBchSection verify_bch;
    OracleCompareSection oracle_compare;
    NoisePreviewSection noise_preview;
    Output output;

    bool operator==(const RunConfig&) const = default;

    std::vector<spinlock::lockin::NoiseComponent> noise_components() const;
    spinlock::lockin::McConfig mc_config() const;  // SI units
};

// The reference noise set expressed in config units.
std::vector<NoiseSpec> reference_noise_specs();

// Parses and validates; ConfigError messages carry line/column (syntax) or the
// dotted key path (validation).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
RunConfig from_json(const nlohmann::json& doc);

// Every field, defaults included, with grids as explicit arrays.
nlohmann::json to_json(const RunConfig& config);

// Re-runs validation on an already-built config (e.g. after CLI overrides).
void validate(const RunConfig& config);

// Closest candidate by edit distance, used in unknown-key diagnostics.
std::string nearest_key(std::string_view key, const std::vector<std::string>& candidates);

// FNV-1a of the compact serialized config.
std::uint64_t config_hash(const RunConfig& config);

}  // namespace spinlock::config

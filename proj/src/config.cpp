#include "spinlock/config.hpp"

#include "spinlock/errors.hpp"
#include "spinlock/photon_atom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace spinlock::config {

using nlohmann::json;

namespace {

std::string join_path(const std::string& base, std::string_view key) {
    return base.empty() ? std::string(key) : base + "." + std::string(key);
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError("config: " + (path.empty() ? std::string("<root>") : path) + ": " + message);
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

// Typed access to one JSON object with a closed set of keys.
class Reader {
public:
    Reader(const json& node, std::string path, std::vector<std::string> keys)
        : node_(node), path_(std::move(path)), keys_(std::move(keys)) {
        if (!node_.is_object()) fail(path_, "expected an object");
        for (const auto& item : node_.items()) {
            if (std::find(keys_.begin(), keys_.end(), item.key()) == keys_.end()) {
                fail(path_, "unknown key \"" + item.key() + "\"; did you mean \"" +
                                nearest_key(item.key(), keys_) + "\"?");
            }
        }
    }

    bool has(const std::string& key) const {
        return node_.contains(key) && !node_.at(key).is_null();
    }

    std::string where(const std::string& key) const { return join_path(path_, key); }

    const json& raw(const std::string& key) const { return node_.at(key); }

    double number(const std::string& key, double fallback) const {
        return has(key) ? as_number(raw(key), where(key)) : fallback;
    }

    std::optional<double> optional_number(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return as_number(raw(key), where(key));
    }

    int integer(const std::string& key, int fallback) const {
        return has(key) ? as_int(raw(key), where(key)) : fallback;
    }

    int required_integer(const std::string& key) const {
        if (!has(key)) fail(where(key), "missing required key \"" + key + "\"");
        return as_int(raw(key), where(key));
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        if (!raw(key).is_boolean()) fail(where(key), "expected true or false");
        return raw(key).get<bool>();
    }

    std::string string(const std::string& key, std::string fallback) const {
        if (!has(key)) return fallback;
        if (!raw(key).is_string()) fail(where(key), "expected a string");
        return raw(key).get<std::string>();
    }

    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            fail(where(key), "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    // Array of numbers, or {"start", "stop", "step"} expanded inclusively.
    std::vector<double> grid(const std::string& key, std::vector<double> fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        const std::string at = where(key);
        if (v.is_array()) return numbers(v, at);
        Reader spec(v, at, {"start", "stop", "step"});
        for (const char* k : {"start", "stop", "step"}) {
            if (!spec.has(k)) fail(spec.where(k), std::string("missing required key \"") + k + "\"");
        }
        const double start = spec.number("start", 0.0);
        const double stop = spec.number("stop", 0.0);
        const double step = spec.number("step", 0.0);
        if (!(step > 0.0)) fail(spec.where("step"), "must be positive");
        if (stop < start) fail(spec.where("stop"), "must not be below start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 10'000'000) fail(at, "grid too large");
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
        return out;
    }

    std::vector<double> number_list(const std::string& key, std::vector<double> fallback) const {
        return has(key) ? numbers(raw(key), where(key)) : fallback;
    }

    std::vector<int> int_list(const std::string& key, std::vector<int> fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_array()) fail(where(key), "expected an array of integers");
        std::vector<int> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_int(v[i], where(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    Reader child(const std::string& key, std::vector<std::string> keys) const {
        static const json empty = json::object();
        return Reader(has(key) ? raw(key) : empty, where(key), std::move(keys));
    }

private:
    static double as_number(const json& v, const std::string& at) {
        if (!v.is_number()) fail(at, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(at, "must be finite");
        return d;
    }

    static int as_int(const json& v, const std::string& at) {
        if (!v.is_number_integer()) fail(at, "expected an integer");
        const auto i = v.get<std::int64_t>();
        if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
            fail(at, "integer out of range");
        }
        return static_cast<int>(i);
    }

    static std::vector<double> numbers(const json& v, const std::string& at) {
        if (!v.is_array()) fail(at, "expected an array of numbers or a {start, stop, step} range");
        std::vector<double> out;
        out.reserve(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_number(v[i], at + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    const json& node_;
    std::string path_;
    std::vector<std::string> keys_;
};

std::vector<double> default_tau_arm_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 300; ++i) g.push_back(1.0 + 0.08 * i);
    return g;
}

std::vector<double> default_duration_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 146; ++i) g.push_back(8.0 + 2.0 * i);
    return g;
}

std::vector<double> default_preview_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 1000; ++i) g.push_back(0.1 * i);
    return g;
}

void check_grid(const std::vector<double>& grid, const std::string& at) {
    if (grid.empty()) fail(at, "grid must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) fail(at, "grid values must be finite");
        if (i > 0 && !(grid[i] > grid[i - 1])) fail(at, "grid must be strictly increasing");
    }
}

void check_positive_grid(const std::vector<double>& grid, const std::string& at) {
    check_grid(grid, at);
    if (!(grid.front() > 0.0)) fail(at, "grid values must be positive");
}

NoiseUnits parse_units(std::string_view name, const std::string& at) {
    if (name == "pT") return NoiseUnits::pT;
    if (name == "Hz") return NoiseUnits::hz;
    if (name == "Hz2-slow") return NoiseUnits::hz2_slow;
    fail(at, "unknown units \"" + std::string(name) + "\" (expected pT, Hz or Hz2-slow)");
}

OutputFormat parse_format(std::string_view name, const std::string& at) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    fail(at, "unknown format \"" + std::string(name) + "\" (expected csv or json)");
}

lockin::Integral parse_integral(std::string_view name, const std::string& at) {
    if (name == "definite") return lockin::Integral::definite;
    if (name == "indefinite") return lockin::Integral::indefinite;
    fail(at, "unknown integral \"" + std::string(name) + "\" (expected definite or indefinite)");
}

}  // namespace

// ------------------------------ names ---------------------------------------

std::string_view to_string(Experiment e) {
    switch (e) {
        case Experiment::contrast: return "contrast";
        case Experiment::sensitivity: return "sensitivity";
        case Experiment::verify_bch: return "verify-bch";
        case Experiment::oracle_compare: return "oracle-compare";
        case Experiment::noise_preview: return "noise-preview";
    }
    return "unknown";
}

std::string_view to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

std::string_view to_string(NoiseUnits u) {
    switch (u) {
        case NoiseUnits::pT: return "pT";
        case NoiseUnits::hz: return "Hz";
        case NoiseUnits::hz2_slow: return "Hz2-slow";
    }
    return "unknown";
}

std::string_view to_string(lockin::Integrand i) {
    return i == lockin::Integrand::ramsey ? "ramsey" : "eq23";
}

std::string_view to_string(lockin::Integral i) {
    return i == lockin::Integral::definite ? "definite" : "indefinite";
}

Experiment parse_experiment(std::string_view name) {
    for (Experiment e : {Experiment::contrast, Experiment::sensitivity, Experiment::verify_bch,
                         Experiment::oracle_compare, Experiment::noise_preview}) {
        if (name == to_string(e)) return e;
    }
    throw ConfigError("config: experiment: unknown experiment \"" + std::string(name) +
                      "\"; did you mean \"" +
                      nearest_key(name, {"contrast", "sensitivity", "verify-bch", "oracle-compare",
                                         "noise-preview"}) +
                      "\"?");
}

lockin::Integrand parse_integrand(std::string_view name) {
    if (name == "ramsey") return lockin::Integrand::ramsey;
    if (name == "eq23") return lockin::Integrand::eq23;
    throw ConfigError("unknown contrast integrand \"" + std::string(name) +
                      "\" (expected ramsey or eq23)");
}

std::string nearest_key(std::string_view key, const std::vector<std::string>& candidates) {
    std::string best;
    std::size_t best_distance = std::numeric_limits<std::size_t>::max();
    for (const std::string& c : candidates) {
        const std::size_t d = edit_distance(key, c);
        if (d < best_distance) {
            best_distance = d;
            best = c;
        }
    }
    return best;
}

// ------------------------------ derived values --------------------------------

double Physics::chi() const {
    return chi_override ? *chi_override : photon::effective_chi(n_photons, g, tau);
}

double Physics::squeeze_time() const {
    return squeeze_duration ? *squeeze_duration : 4.0 * tau;
}

double Physics::alpha() const {
    return chi() * squeeze_time();
}

std::vector<lockin::NoiseComponent> RunConfig::noise_components() const {
    std::vector<lockin::NoiseComponent> out;
    out.reserve(noise.size());
    for (const NoiseSpec& spec : noise) {
        lockin::NoiseComponent c;
        switch (spec.units) {
            case NoiseUnits::pT: c = lockin::from_field_pt(spec.amplitude, spec.freq_hz, gyro_hz_per_nt); break;
            case NoiseUnits::hz: c = {spec.amplitude, spec.freq_hz, std::nullopt}; break;
            case NoiseUnits::hz2_slow: c = lockin::from_slow_hz2(spec.amplitude, spec.freq_hz); break;
        }
        c.fixed_phase = spec.phase;
        lockin::validate(c);
        out.push_back(c);
    }
    return out;
}

lockin::McConfig RunConfig::mc_config() const {
    lockin::McConfig out;
    out.samples = mc.samples;
    out.master_seed = mc.seed;
    out.n_atoms = physics.n_atoms;
    out.n_photons = physics.n_photons;
    out.chi = physics.chi() * 1e3;                   // 1/ms -> 1/s
    out.squeeze_duration = physics.squeeze_time() * 1e-3;  // ms -> s
    out.integrand = mc.integrand;
    out.beta = {lockin.toggle, lockin.beta_integral};
    return out;
}

std::vector<NoiseSpec> reference_noise_specs() {
    return {{NoiseUnits::pT, 540.0, 50.0, std::nullopt},
            {NoiseUnits::pT, 390.0, 100.0, std::nullopt},
            {NoiseUnits::hz2_slow, 40.0, 2.1, std::nullopt}};
}

// ------------------------------ parsing ---------------------------------------

RunConfig from_json(const json& doc) {
    const Reader root(doc, "",
                      {"experiment", "physics", "lockin", "noise", "gyro_hz_per_nt", "mc",
                       "contrast", "sensitivity", "verify_bch", "oracle_compare", "noise_preview",
                       "output"});
    RunConfig cfg;
    cfg.experiment = parse_experiment(root.string("experiment", "contrast"));

    if (!root.has("physics")) fail("physics", "missing required key \"physics\" (needs n_atoms)");
    const Reader physics = root.child(
        "physics", {"n_atoms", "n_photons", "g", "tau", "chi_override", "squeeze_duration"});
    cfg.physics.n_atoms = physics.required_integer("n_atoms");
    cfg.physics.n_photons = physics.integer("n_photons", cfg.physics.n_atoms);
    cfg.physics.g = physics.number("g", cfg.physics.g);
    cfg.physics.tau = physics.number("tau", cfg.physics.tau);
    cfg.physics.chi_override = physics.optional_number("chi_override");
    cfg.physics.squeeze_duration = physics.optional_number("squeeze_duration");

    const Reader lock = root.child("lockin", {"n_pulses", "tau_arm_grid", "duration_grid", "toggle",
                                              "bracket", "beta_integral"});
    cfg.lockin.n_pulses = lock.integer("n_pulses", cfg.lockin.n_pulses);
    cfg.lockin.tau_arm_grid = lock.grid("tau_arm_grid", default_tau_arm_grid());
    cfg.lockin.duration_grid = lock.grid("duration_grid", default_duration_grid());
    cfg.lockin.toggle = lock.boolean("toggle", true);
    cfg.lockin.bracket = lock.boolean("bracket", true);
    cfg.lockin.beta_integral =
        parse_integral(lock.string("beta_integral", "definite"), lock.where("beta_integral"));

    cfg.gyro_hz_per_nt = root.number("gyro_hz_per_nt", cfg.gyro_hz_per_nt);

    if (root.has("noise")) {
        const json& list = root.raw("noise");
        if (!list.is_array()) fail("noise", "expected an array of noise components");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Reader item(list[i], "noise[" + std::to_string(i) + "]",
                              {"units", "amplitude", "freq_hz", "phase"});
            for (const char* k : {"units", "amplitude", "freq_hz"}) {
                if (!item.has(k)) fail(item.where(k), std::string("missing required key \"") + k + "\"");
            }
            NoiseSpec spec;
            spec.units = parse_units(item.string("units", ""), item.where("units"));
            spec.amplitude = item.number("amplitude", 0.0);
            spec.freq_hz = item.number("freq_hz", 0.0);
            if (item.has("phase")) {
                const json& p = item.raw("phase");
                if (p.is_string()) {
                    if (p.get<std::string>() != "random") {
                        fail(item.where("phase"), "expected a number (radians) or \"random\"");
                    }
                } else {
                    spec.phase = item.number("phase", 0.0);
                }
            }
            cfg.noise.push_back(spec);
        }
    } else {
        cfg.noise = reference_noise_specs();
    }

    const Reader mc = root.child("mc", {"samples", "seed", "integrand"});
    const int samples = mc.integer("samples", static_cast<int>(cfg.mc.samples));
    if (samples < 1) fail(mc.where("samples"), "must be at least 1");
    cfg.mc.samples = static_cast<std::size_t>(samples);
    cfg.mc.seed = mc.unsigned64("seed", 0);
    cfg.mc.integrand = parse_integrand(mc.string("integrand", "ramsey"));

    const Reader contrast = root.child("contrast", {"n_atoms", "unsqueezed_reference", "threshold"});
    cfg.contrast.n_atoms = contrast.int_list("n_atoms", {cfg.physics.n_atoms});
    cfg.contrast.unsqueezed_reference = contrast.boolean("unsqueezed_reference", false);
    cfg.contrast.threshold = contrast.number("threshold", cfg.contrast.threshold);

    const Reader sens = root.child("sensitivity", {"n_atoms"});
    cfg.sensitivity.n_atoms = sens.int_list("n_atoms", {cfg.physics.n_atoms});

    const Reader bch = root.child("verify_bch", {"n_photons", "n_atoms", "g_tau"});
    cfg.verify_bch.n_photons = bch.integer("n_photons", cfg.verify_bch.n_photons);
    cfg.verify_bch.n_atoms = bch.integer("n_atoms", cfg.verify_bch.n_atoms);
    cfg.verify_bch.g_tau = bch.number_list("g_tau", cfg.verify_bch.g_tau);

    const Reader oc =
        root.child("oracle_compare", {"n_atoms", "alpha", "beta", "gamma", "orderings"});
    cfg.oracle_compare.n_atoms = oc.int_list("n_atoms", cfg.oracle_compare.n_atoms);
    cfg.oracle_compare.alpha = oc.number_list("alpha", cfg.oracle_compare.alpha);
    cfg.oracle_compare.beta = oc.number_list("beta", cfg.oracle_compare.beta);
    cfg.oracle_compare.gamma = oc.number_list("gamma", cfg.oracle_compare.gamma);
    if (oc.has("orderings")) {
        const json& list = oc.raw("orderings");
        if (!list.is_array()) fail(oc.where("orderings"), "expected an array of names");
        cfg.oracle_compare.orderings.clear();
        for (const json& name : list) {
            if (!name.is_string()) fail(oc.where("orderings"), "expected an array of names");
            try {
                cfg.oracle_compare.orderings.push_back(compare::parse_ordering(name.get<std::string>()));
            } catch (const ConfigError& e) {
                fail(oc.where("orderings"), e.what());
            }
        }
    }

    const Reader preview = root.child("noise_preview", {"t_grid"});
    cfg.noise_preview.t_grid = preview.grid("t_grid", default_preview_grid());

    const Reader output = root.child("output", {"path", "format"});
    cfg.output.path = output.string("path", "");
    cfg.output.format = parse_format(output.string("format", "csv"), output.where("format"));

    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    const Physics& p = cfg.physics;
    if (p.n_atoms < 1 || p.n_atoms > spin::kMaxAtoms) fail("physics.n_atoms", "must lie in [1, 10000]");
    if (p.n_photons < 1) fail("physics.n_photons", "must be positive");
    if (!(p.g > 0.0)) fail("physics.g", "must be positive");
    if (!(p.tau > 0.0)) fail("physics.tau", "must be positive");
    if (p.chi_override && *p.chi_override < 0.0) fail("physics.chi_override", "must be non-negative");
    if (p.squeeze_duration && *p.squeeze_duration < 0.0) {
        fail("physics.squeeze_duration", "must be non-negative");
    }

    if (cfg.lockin.n_pulses < 1) fail("lockin.n_pulses", "must be at least 1");
    check_positive_grid(cfg.lockin.tau_arm_grid, "lockin.tau_arm_grid");
    check_positive_grid(cfg.lockin.duration_grid, "lockin.duration_grid");
    if (cfg.lockin.toggle && cfg.lockin.beta_integral == lockin::Integral::indefinite) {
        fail("lockin.beta_integral", "\"indefinite\" requires toggle = false");
    }

    if (!(cfg.gyro_hz_per_nt > 0.0)) fail("gyro_hz_per_nt", "must be positive");
    for (std::size_t i = 0; i < cfg.noise.size(); ++i) {
        const NoiseSpec& n = cfg.noise[i];
        const std::string at = "noise[" + std::to_string(i) + "]";
        if (!(n.freq_hz > 0.0)) fail(at + ".freq_hz", "must be positive");
        if (n.amplitude < 0.0) fail(at + ".amplitude", "must be non-negative");
    }

    if (cfg.mc.samples < 1) fail("mc.samples", "must be at least 1");

    auto check_atoms = [](const std::vector<int>& list, const std::string& at, int max) {
        if (list.empty()) fail(at, "must not be empty");
        for (int n : list) {
            if (n < 1 || n > max) fail(at, "atom numbers must lie in [1, " + std::to_string(max) + "]");
        }
    };
    check_atoms(cfg.contrast.n_atoms, "contrast.n_atoms", spin::kMaxAtoms);
    if (!(cfg.contrast.threshold > 0.0 && cfg.contrast.threshold < 1.0)) {
        fail("contrast.threshold", "must lie in (0, 1)");
    }
    check_atoms(cfg.sensitivity.n_atoms, "sensitivity.n_atoms", spin::kMaxAtoms);

    if (cfg.verify_bch.n_photons < 1 || cfg.verify_bch.n_photons > photon::kMaxPhotons) {
        fail("verify_bch.n_photons", "must lie in [1, 200]");
    }
    if (cfg.verify_bch.n_atoms < 1) fail("verify_bch.n_atoms", "must be positive");
    if (Eigen::Index{cfg.verify_bch.n_photons + 1} * (cfg.verify_bch.n_atoms + 1) >
        photon::kMaxJointDim) {
        fail("verify_bch", "joint dimension (n_photons+1)(n_atoms+1) exceeds 10000");
    }
    check_positive_grid(cfg.verify_bch.g_tau, "verify_bch.g_tau");

    check_atoms(cfg.oracle_compare.n_atoms, "oracle_compare.n_atoms", 1000);
    for (const char* key : {"alpha", "beta", "gamma"}) {
        const auto& list = std::string_view(key) == "alpha"  ? cfg.oracle_compare.alpha
                           : std::string_view(key) == "beta" ? cfg.oracle_compare.beta
                                                              : cfg.oracle_compare.gamma;
        if (list.empty()) fail(std::string("oracle_compare.") + key, "must not be empty");
    }
    if (cfg.oracle_compare.orderings.empty()) fail("oracle_compare.orderings", "must not be empty");

    check_grid(cfg.noise_preview.t_grid, "noise_preview.t_grid");
}

RunConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const json::parse_error& e) {
        // byte is 1-based and points just past the offending character
        const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ConfigError("config: parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + e.what());
    }
    return from_json(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

// ------------------------------ serialization ---------------------------------

json to_json(const RunConfig& cfg) {
    auto optional = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };

    json noise = json::array();
    for (const NoiseSpec& n : cfg.noise) {
        noise.push_back({{"units", to_string(n.units)},
                         {"amplitude", n.amplitude},
                         {"freq_hz", n.freq_hz},
                         {"phase", n.phase ? json(*n.phase) : json("random")}});
    }
    json orderings = json::array();
    for (compare::Ordering o : cfg.oracle_compare.orderings) orderings.push_back(compare::to_string(o));

    return {
        {"experiment", to_string(cfg.experiment)},
        {"physics",
         {{"n_atoms", cfg.physics.n_atoms},
          {"n_photons", cfg.physics.n_photons},
          {"g", cfg.physics.g},
          {"tau", cfg.physics.tau},
          {"chi_override", optional(cfg.physics.chi_override)},
          {"squeeze_duration", optional(cfg.physics.squeeze_duration)}}},
        {"lockin",
         {{"n_pulses", cfg.lockin.n_pulses},
          {"tau_arm_grid", cfg.lockin.tau_arm_grid},
          {"duration_grid", cfg.lockin.duration_grid},
          {"toggle", cfg.lockin.toggle},
          {"bracket", cfg.lockin.bracket},
          {"beta_integral", to_string(cfg.lockin.beta_integral)}}},
        {"noise", noise},
        {"gyro_hz_per_nt", cfg.gyro_hz_per_nt},
        {"mc",
         {{"samples", cfg.mc.samples},
          {"seed", cfg.mc.seed},
          {"integrand", to_string(cfg.mc.integrand)}}},
        {"contrast",
         {{"n_atoms", cfg.contrast.n_atoms},
          {"unsqueezed_reference", cfg.contrast.unsqueezed_reference},
          {"threshold", cfg.contrast.threshold}}},
        {"sensitivity", {{"n_atoms", cfg.sensitivity.n_atoms}}},
        {"verify_bch",
         {{"n_photons", cfg.verify_bch.n_photons},
          {"n_atoms", cfg.verify_bch.n_atoms},
          {"g_tau", cfg.verify_bch.g_tau}}},
        {"oracle_compare",
         {{"n_atoms", cfg.oracle_compare.n_atoms},
          {"alpha", cfg.oracle_compare.alpha},
          {"beta", cfg.oracle_compare.beta},
          {"gamma", cfg.oracle_compare.gamma},
          {"orderings", orderings}}},
        {"noise_preview", {{"t_grid", cfg.noise_preview.t_grid}}},
        {"output", {{"path", cfg.output.path}, {"format", to_string(cfg.output.format)}}},
    };
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace spinlock::config

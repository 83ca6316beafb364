#include "spinlock/run.hpp"

#include "spinlock/errors.hpp"
#include "spinlock/oracle_compare.hpp"
#include "spinlock/photon_atom.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace spinlock::run {

using config::Experiment;
using config::RunConfig;
using nlohmann::json;

namespace {

std::vector<double> ms_to_s(const std::vector<double>& ms) {
    std::vector<double> s(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) s[i] = ms[i] * 1e-3;
    return s;
}

std::string hex64(std::uint64_t value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, value);
    return buf;
}

std::string label(int n_atoms, double alpha) {
    return "n_atoms=" + std::to_string(n_atoms) + ",alpha=" + format_number(alpha);
}

Table contrast_table(const RunConfig& cfg, unsigned threads) {
    Table table{columns_for(Experiment::contrast), {}, {}};
    const auto components = cfg.noise_components();
    const auto tau_grid = ms_to_s(cfg.lockin.tau_arm_grid);

    std::vector<bool> squeezed{true};
    if (cfg.contrast.unsqueezed_reference) squeezed.push_back(false);

    for (int n_atoms : cfg.contrast.n_atoms) {
        for (bool squeeze : squeezed) {
            lockin::McConfig mc = cfg.mc_config();
            mc.n_atoms = n_atoms;
            if (!squeeze) mc.chi = 0.0;
            const double alpha = mc.alpha();
            const auto curve = lockin::contrast_curve(components, cfg.lockin.n_pulses, tau_grid, mc,
                                                      cfg.lockin.bracket, threads);
            for (const auto& p : curve) {
                table.rows.push_back({p.x, p.estimate, p.std_error, std::int64_t{n_atoms}, alpha});
            }
            std::string range;
            try {
                const auto [lo, hi] = lockin::measurement_range(curve, cfg.contrast.threshold);
                range = format_number(lo) + ".." + format_number(hi) + " ms";
            } catch (const EmptyRangeError&) {
                range = "none";
            }
            table.notes.emplace_back("measurement_range[" + label(n_atoms, alpha) + ",threshold=" +
                                         format_number(cfg.contrast.threshold) + "]",
                                     range);
        }
    }
    return table;
}

Table sensitivity_table(const RunConfig& cfg, unsigned threads) {
    Table table{columns_for(Experiment::sensitivity), {}, {}};
    const auto components = cfg.noise_components();
    const auto grid = ms_to_s(cfg.lockin.duration_grid);
    const lockin::McConfig mc = cfg.mc_config();
    const auto curves = lockin::sensitivity_curve(components, cfg.lockin.n_pulses,
                                                  cfg.sensitivity.n_atoms, grid, mc,
                                                  cfg.lockin.bracket, threads);
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const int n_atoms = cfg.sensitivity.n_atoms[c];
        const lockin::CurvePoint* best = nullptr;
        for (const auto& p : curves[c]) {
            table.rows.push_back({p.x, p.estimate, p.std_error, std::int64_t{n_atoms}});
            if (best == nullptr || p.estimate < best->estimate) best = &p;
        }
        table.notes.emplace_back("best[n_atoms=" + std::to_string(n_atoms) + "]",
                                 format_number(best->estimate) + " Hz/sqrt(Hz) at T=" +
                                     format_number(best->x) + " ms");
    }
    return table;
}

Table bch_table(const RunConfig& cfg) {
    Table table{columns_for(Experiment::verify_bch), {}, {}};
    const auto& section = cfg.verify_bch;
    std::vector<double> errors;
    for (double g_tau : section.g_tau) {
        // only the product g*tau enters the unitaries
        const auto params = photon::SqueezeParams::from_coupling(1.0, g_tau, section.n_photons);
        const double err = photon::bch_error(params, section.n_photons, section.n_atoms);
        errors.push_back(err);
        table.rows.push_back({g_tau, err});
        table.notes.emplace_back("oat_map_error[g_tau=" + format_number(g_tau) + "]",
                                 format_number(photon::oat_map_error(params, section.n_photons,
                                                                     section.n_atoms)));
    }
    if (section.g_tau.size() >= 2) {
        table.notes.emplace_back("loglog_slope", format_number(loglog_slope(section.g_tau, errors)));
    }
    return table;
}

Table oracle_table(const RunConfig& cfg) {
    Table table{columns_for(Experiment::oracle_compare), {}, {}};
    const auto& s = cfg.oracle_compare;
    for (compare::Ordering ordering : s.orderings) {
        for (int n : s.n_atoms) {
            for (double a : s.alpha) {
                for (double b : s.beta) {
                    for (double g : s.gamma) {
                        const compare::Residual r = compare::compare({a, b, g}, n, ordering);
                        table.rows.push_back({a, b, g, std::int64_t{n},
                                              std::string(compare::to_string(ordering)),
                                              r.jx_analytic, r.jx_oracle, r.jz_analytic,
                                              r.jz_oracle, r.dphi_analytic, r.dphi_oracle});
                    }
                }
            }
        }
    }
    return table;
}

Table preview_table(const RunConfig& cfg) {
    Table table{columns_for(Experiment::noise_preview), {}, {}};
    const auto components = cfg.noise_components();
    const auto theta = lockin::draw_phases(components, cfg.mc.seed, 0, 0);
    for (std::size_t k = 0; k < theta.size(); ++k) {
        table.notes.emplace_back("theta[" + std::to_string(k) + "]", format_number(theta[k]));
    }
    for (double t_ms : cfg.noise_preview.t_grid) {
        table.rows.push_back({t_ms, lockin::synth_noise(components, theta, t_ms * 1e-3)});
    }
    return table;
}

std::string cell_text(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    return std::get<std::string>(cell);
}

json cell_json(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        return std::isfinite(*d) ? json(*d) : json(nullptr);
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return json(*i);
    return json(std::get<std::string>(cell));
}

}  // namespace

std::vector<std::string> columns_for(Experiment experiment) {
    switch (experiment) {
        case Experiment::contrast: return {"tau_arm_ms", "contrast", "stderr", "n_atoms", "alpha"};
        case Experiment::sensitivity:
            return {"T_ms", "sensitivity_hz_per_sqrt_hz", "stderr", "n_atoms"};
        case Experiment::verify_bch: return {"g_tau", "bch_error"};
        case Experiment::oracle_compare:
            return {"alpha",       "beta",      "gamma",       "n_atoms",
                    "ordering",    "jx_analytic", "jx_oracle", "jz_analytic",
                    "jz_oracle",   "dphi_analytic", "dphi_oracle"};
        case Experiment::noise_preview: return {"t_ms", "noise_hz"};
    }
    throw ContractError("columns_for: unknown experiment");
}

Table execute(const RunConfig& cfg, const RunOptions& options) {
    config::validate(cfg);
    const unsigned threads = options.threads == 0 ? 1 : options.threads;
    switch (cfg.experiment) {
        case Experiment::contrast: return contrast_table(cfg, threads);
        case Experiment::sensitivity: return sensitivity_table(cfg, threads);
        case Experiment::verify_bch: return bch_table(cfg);
        case Experiment::oracle_compare: return oracle_table(cfg);
        case Experiment::noise_preview: return preview_table(cfg);
    }
    throw ContractError("execute: unknown experiment");
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string render_csv(const Table& table, const RunConfig& cfg) {
    std::ostringstream out;
    out << "# spinlock " << kVersion << "\n";
    out << "# experiment=" << config::to_string(cfg.experiment) << "\n";
    out << "# seed=" << cfg.mc.seed << "\n";
    out << "# config_hash=" << hex64(config::config_hash(cfg)) << "\n";
    out << "# config=" << config::to_json(cfg).dump() << "\n";
    for (const auto& [key, value] : table.notes) out << "# " << key << "=" << value << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
        out << "\n";
    }
    return out.str();
}

std::string render_json(const Table& table, const RunConfig& cfg) {
    json notes = json::object();
    for (const auto& [key, value] : table.notes) notes[key] = value;
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r = json::array();
        for (const Cell& cell : row) r.push_back(cell_json(cell));
        rows.push_back(std::move(r));
    }
    const json doc = {{"metadata",
                       {{"version", kVersion},
                        {"experiment", config::to_string(cfg.experiment)},
                        {"seed", cfg.mc.seed},
                        {"config_hash", hex64(config::config_hash(cfg))},
                        {"config", config::to_json(cfg)},
                        {"notes", notes}}},
                      {"columns", table.columns},
                      {"rows", rows}};
    return doc.dump(2) + "\n";
}

int run(const RunConfig& cfg, const RunOptions& options, std::ostream& out, std::ostream& diag) {
    try {
        const Table table = execute(cfg, options);
        const std::string text = cfg.output.format == config::OutputFormat::csv
                                     ? render_csv(table, cfg)
                                     : render_json(table, cfg);
        if (cfg.output.path.empty()) {
            out << text;
            out.flush();
            return out ? 0 : 1;
        }
        std::ofstream file(cfg.output.path, std::ios::binary);
        if (!file) {
            diag << "error: cannot open " << cfg.output.path << " for writing\n";
            return 1;
        }
        file << text;
        if (!file) {
            diag << "error: failed writing " << cfg.output.path << "\n";
            return 1;
        }
        return 0;
    } catch (const ConfigError& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    }
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ContractError("loglog_slope: need at least two matched points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("loglog_slope: non-positive value");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace spinlock::run

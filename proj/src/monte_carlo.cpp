#include "spinlock/analytic.hpp"
#include "spinlock/errors.hpp"
#include "spinlock/noise_lockin.hpp"
#include "spinlock/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace spinlock::lockin {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct SampleStats {
    double mean;
    double std_error;
};

SampleStats summarize(const std::vector<double>& values) {
    const std::size_t n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(n);
    if (n < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sample_var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(sample_var / static_cast<double>(n))};
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t point_index,
                          std::uint64_t sample_index) {
    return mix(mix(mix(master_seed) ^ point_index) ^ sample_index);
}

std::vector<double> draw_phases(std::span<const NoiseComponent> components,
                                std::uint64_t master_seed, std::uint64_t point_index,
                                std::uint64_t sample_index) {
    std::mt19937_64 engine(sample_seed(master_seed, point_index, sample_index));
    std::vector<double> theta;
    theta.reserve(components.size());
    for (const NoiseComponent& c : components) {
        // 53 random bits -> [0, 1); drawn for fixed components too so that the
        // stream of the remaining components does not depend on which are fixed.
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        theta.push_back(c.fixed_phase ? *c.fixed_phase : 2.0 * std::numbers::pi * u);
    }
    return theta;
}

double contrast_integrand(double beta, const McConfig& mc, double drive_phase) {
    const double alpha = mc.alpha();
    switch (mc.integrand) {
        case Integrand::ramsey: {
            const double cf = analytic::cos_factor(alpha, mc.n_atoms);
            const double sf = analytic::sin_factor(alpha, mc.n_atoms);
            if (cf == 0.0) {
                throw ContractError("ramsey contrast undefined: cos^(N-1)(alpha) vanishes");
            }
            return (cf * std::cos(beta) - sf * std::sin(beta)) / cf;
        }
        case Integrand::eq23: {
            try {
                return std::cos(
                    analytic::min_detectable_phase({alpha, beta, drive_phase}, mc.n_atoms));
            } catch (const FringeNodeError&) {
                // cos of a diverging argument; averages to zero
                return 0.0;
            }
        }
    }
    throw ContractError("unknown contrast integrand");
}

CurvePoint fringe_contrast_mc(std::span<const NoiseComponent> components,
                              const LockInSchedule& schedule, const McConfig& mc,
                              std::uint64_t point_index, unsigned threads) {
    if (mc.samples < 1) {
        throw ConfigError("Monte-Carlo sample count must be at least 1");
    }
    for (const NoiseComponent& c : components) validate(c);

    const BetaResponse response(components, schedule, mc.beta);
    const double drive = schedule.drive_phase();
    std::vector<double> values(mc.samples);
    parallel_for(mc.samples, threads, [&](std::size_t i) {
        const std::vector<double> theta = draw_phases(components, mc.master_seed, point_index, i);
        values[i] = contrast_integrand(response(theta), mc, drive);
    });

    const SampleStats stats = summarize(values);
    // The fringe amplitude is the modulus of the averaged complex fringe.
    const double estimate = mc.integrand == Integrand::ramsey ? std::abs(stats.mean) : stats.mean;
    return {schedule.tau_arm() * 1e3, estimate, stats.std_error};
}

std::vector<CurvePoint> contrast_curve(std::span<const NoiseComponent> components, int n_pulses,
                                       std::span<const double> tau_arm_grid, const McConfig& mc,
                                       bool bracket, unsigned threads) {
    std::vector<CurvePoint> curve(tau_arm_grid.size());
    const bool split_points = tau_arm_grid.size() > 1;
    parallel_for(tau_arm_grid.size(), split_points ? threads : 1, [&](std::size_t i) {
        const LockInSchedule schedule(n_pulses, tau_arm_grid[i], bracket);
        curve[i] = fringe_contrast_mc(components, schedule, mc, i, split_points ? 1 : threads);
    });
    return curve;
}

std::pair<double, double> measurement_range(std::span<const CurvePoint> curve, double threshold) {
    if (curve.empty()) {
        throw ContractError("measurement_range: empty curve");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ConfigError("measurement_range: threshold must lie in (0, 1)");
    }
    bool found = false;
    std::pair<double, double> best{0.0, 0.0};
    std::size_t i = 0;
    while (i < curve.size()) {
        if (curve[i].estimate < threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < curve.size() && curve[j + 1].estimate >= threshold) ++j;
        const double width = curve[j].x - curve[i].x;
        if (!found || width > best.second - best.first) {
            best = {curve[i].x, curve[j].x};
            found = true;
        }
        i = j + 1;
    }
    if (!found) {
        throw EmptyRangeError("measurement_range: no point reaches threshold " +
                              std::to_string(threshold));
    }
    return best;
}

// ------------------------------ sensitivity -----------------------------------

double coherent_time(int n_pulses, double tau_arm) {
    return n_pulses * tau_arm;
}

double cycle_time(double sequence_duration, double squeeze_duration) {
    return sequence_duration + squeeze_duration;
}

double sensitivity(double phase_resolution, double contrast, double coherent, double cycle) {
    if (!(contrast > 0.0)) return std::numeric_limits<double>::infinity();
    return phase_resolution / contrast / (2.0 * std::numbers::pi * coherent) * std::sqrt(cycle);
}

std::vector<std::vector<CurvePoint>> sensitivity_curve(std::span<const NoiseComponent> components,
                                                       int n_pulses,
                                                       std::span<const int> n_atoms_list,
                                                       std::span<const double> duration_grid,
                                                       const McConfig& mc, bool bracket,
                                                       unsigned threads) {
    std::vector<std::vector<CurvePoint>> curves;
    curves.reserve(n_atoms_list.size());
    for (int n_atoms : n_atoms_list) {
        McConfig local = mc;
        local.n_atoms = n_atoms;
        const double resolution =
            analytic::min_detectable_phase({local.alpha(), 0.0, 0.0}, n_atoms);

        std::vector<CurvePoint> curve(duration_grid.size());
        parallel_for(duration_grid.size(), threads, [&](std::size_t i) {
            const double total = duration_grid[i];
            const LockInSchedule schedule(n_pulses, total / (n_pulses + 1), bracket);
            const CurvePoint contrast = fringe_contrast_mc(components, schedule, local, i, 1);
            const double coherent = coherent_time(n_pulses, schedule.tau_arm());
            const double cycle = cycle_time(total, local.squeeze_duration);
            const double s = sensitivity(resolution, contrast.estimate, coherent, cycle);
            // first-order propagation of the contrast error through 1/A
            const double err = std::isfinite(s) ? s * contrast.std_error / contrast.estimate
                                                : std::numeric_limits<double>::infinity();
            curve[i] = {total * 1e3, s, err};
        });
        curves.push_back(std::move(curve));
    }
    return curves;
}

}  // namespace spinlock::lockin

#include "spinlock/errors.hpp"
#include "spinlock/noise_lockin.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spinlock::lockin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_lengths(std::span<const NoiseComponent> components, std::span<const double> theta) {
    if (components.size() != theta.size()) {
        throw ContractError("noise: " + std::to_string(theta.size()) + " phases given for " +
                            std::to_string(components.size()) + " components");
    }
}

}  // namespace

void validate(const NoiseComponent& c) {
    if (!std::isfinite(c.freq_hz) || c.freq_hz <= 0.0) {
        throw ConfigError("noise component frequency must be positive, got " +
                          std::to_string(c.freq_hz));
    }
    if (!std::isfinite(c.amplitude_hz) || c.amplitude_hz < 0.0) {
        throw ConfigError("noise component amplitude must be non-negative, got " +
                          std::to_string(c.amplitude_hz));
    }
    if (c.fixed_phase && !std::isfinite(*c.fixed_phase)) {
        throw ConfigError("noise component phase must be finite");
    }
}

NoiseComponent from_field_pt(double amplitude_pt, double freq_hz, double gyro_hz_per_nt) {
    NoiseComponent c{amplitude_pt * 1e-3 * gyro_hz_per_nt, freq_hz, std::nullopt};
    validate(c);
    return c;
}

NoiseComponent from_slow_hz2(double product_hz2, double freq_hz) {
    if (!(freq_hz > 0.0)) {
        throw ConfigError("slow noise frequency must be positive");
    }
    NoiseComponent c{product_hz2 / freq_hz, freq_hz, std::nullopt};
    validate(c);
    return c;
}

std::vector<NoiseComponent> reference_noise_set(double gyro_hz_per_nt) {
    return {from_field_pt(540.0, 50.0, gyro_hz_per_nt), from_field_pt(390.0, 100.0, gyro_hz_per_nt),
            from_slow_hz2(40.0, 2.1)};
}

double synth_noise(std::span<const NoiseComponent> components, std::span<const double> theta,
                   double t) {
    check_lengths(components, theta);
    double sum = 0.0;
    for (std::size_t k = 0; k < components.size(); ++k) {
        sum += components[k].amplitude_hz * std::cos(theta[k] + kTwoPi * components[k].freq_hz * t);
    }
    return sum;
}

// ------------------------------ lock-in timing --------------------------------

LockInSchedule::LockInSchedule(int n_pulses, double tau_arm, bool bracket)
    : n_pulses_(n_pulses), tau_arm_(tau_arm), bracket_(bracket) {
    if (n_pulses_ < 1) {
        throw ConfigError("lock-in schedule needs at least one pi pulse");
    }
    if (!std::isfinite(tau_arm_) || tau_arm_ <= 0.0) {
        throw ConfigError("tau_arm must be positive, got " + std::to_string(tau_arm_));
    }
}

std::vector<double> LockInSchedule::pulse_times() const {
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(n_pulses_));
    for (int m = 1; m <= n_pulses_; ++m) {
        times.push_back(m * tau_arm_);
    }
    return times;
}

int LockInSchedule::toggling(double t) const {
    if (!(t >= 0.0) || t > total_duration()) {
        throw ContractError("toggling: t = " + std::to_string(t) + " outside [0, " +
                            std::to_string(total_duration()) + "]");
    }
    // pulses at or before t
    int flips = static_cast<int>(std::floor(t / tau_arm_));
    if (flips > n_pulses_) flips = n_pulses_;
    return flips % 2 == 0 ? 1 : -1;
}

double LockInSchedule::drive_phase() const noexcept {
    return n_pulses_ * std::numbers::pi;
}

double accumulated_beta(std::span<const NoiseComponent> components, std::span<const double> theta,
                        const LockInSchedule& schedule, const BetaOptions& options) {
    check_lengths(components, theta);
    if (options.integral == Integral::indefinite && options.toggle) {
        throw ConfigError("indefinite integration requires toggling to be disabled");
    }
    const double total = schedule.total_duration();
    double beta = 0.0;
    for (std::size_t k = 0; k < components.size(); ++k) {
        const NoiseComponent& c = components[k];
        const double scale = c.amplitude_hz / c.freq_hz;
        const double w = kTwoPi * c.freq_hz;
        if (!options.toggle) {
            double term = std::sin(theta[k] + w * total);
            if (options.integral == Integral::definite) term -= std::sin(theta[k]);
            beta += scale * term;
            continue;
        }
        // (A/f) [sin(theta + w b) - sin(theta + w a)] per interval, alternating sign.
        double sign = 1.0;
        for (int j = 0; j <= schedule.n_pulses(); ++j) {
            const double a = j * schedule.tau_arm();
            const double b = (j + 1) * schedule.tau_arm();
            beta += sign * scale * (std::sin(theta[k] + w * b) - std::sin(theta[k] + w * a));
            sign = -sign;
        }
    }
    return beta;
}

BetaResponse::BetaResponse(std::span<const NoiseComponent> components,
                           const LockInSchedule& schedule, const BetaOptions& options) {
    if (options.integral == Integral::indefinite && options.toggle) {
        throw ConfigError("indefinite integration requires toggling to be disabled");
    }
    weights_.reserve(components.size());
    const double total = schedule.total_duration();
    for (const NoiseComponent& c : components) {
        const double scale = c.amplitude_hz / c.freq_hz;
        const double w = kTwoPi * c.freq_hz;
        std::complex<double> sum;
        if (!options.toggle) {
            sum = std::polar(1.0, w * total);
            if (options.integral == Integral::definite) sum -= 1.0;
        } else {
            double sign = 1.0;
            for (int j = 0; j <= schedule.n_pulses(); ++j) {
                const double a = j * schedule.tau_arm();
                const double b = (j + 1) * schedule.tau_arm();
                sum += sign * (std::polar(1.0, w * b) - std::polar(1.0, w * a));
                sign = -sign;
            }
        }
        weights_.push_back(scale * sum);
    }
}

double BetaResponse::operator()(std::span<const double> theta) const {
    if (theta.size() != weights_.size()) {
        throw ContractError("BetaResponse: phase count mismatch");
    }
    double beta = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        beta += std::imag(std::polar(1.0, theta[k]) * weights_[k]);
    }
    return beta;
}

}  // namespace spinlock::lockin

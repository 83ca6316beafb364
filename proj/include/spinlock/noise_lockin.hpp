#pragma once

// Magnetic noise synthesis, lock-in pulse timing, accumulated phase, and the
// Monte-Carlo fringe contrast / sensitivity sweeps built on top of them.
//
// Units inside this module: seconds and Hz. Noise amplitudes are frequency
// equivalents (Zeeman shift in Hz), so a component contributes 2*pi*A*cos(...)
// rad/s to the precession rate. CurvePoint::x is reported in milliseconds.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace spinlock::lockin {

inline constexpr double kDefaultGyroHzPerNt = 28.0;

struct NoiseComponent {
    double amplitude_hz{0.0};
    double freq_hz{1.0};
    std::optional<double> fixed_phase;  // empty: drawn uniformly on [0, 2pi) per sample

    bool random_phase() const noexcept { return !fixed_phase.has_value(); }
};

// Throws ConfigError on freq <= 0, amplitude < 0 or non-finite values.
void validate(const NoiseComponent& component);

// Field amplitude in pT converted with the electron gyromagnetic ratio (Hz/nT).
NoiseComponent from_field_pt(double amplitude_pt, double freq_hz,
                             double gyro_hz_per_nt = kDefaultGyroHzPerNt);

// Slow drift given as (Zeeman shift x frequency) in Hz^2.
NoiseComponent from_slow_hz2(double product_hz2, double freq_hz);

// 540 pT at 50 Hz, 390 pT at 100 Hz, 40 Hz^2 at 2.1 Hz.
std::vector<NoiseComponent> reference_noise_set(double gyro_hz_per_nt = kDefaultGyroHzPerNt);

// sum_k A_k cos(theta_k + 2 pi f_k t), in Hz.
double synth_noise(std::span<const NoiseComponent> components, std::span<const double> theta,
                   double t);

// ------------------------------ lock-in timing --------------------------------

// N pi pulses at m * tau_arm (m = 1..N) inside the window [0, (N+1) tau_arm].
// With `bracket`, pi/2 pulses open and close the window; they are instantaneous.
class LockInSchedule {
public:
    LockInSchedule(int n_pulses, double tau_arm, bool bracket = true);

    int n_pulses() const noexcept { return n_pulses_; }
    double tau_arm() const noexcept { return tau_arm_; }
    bool bracket() const noexcept { return bracket_; }
    double total_duration() const noexcept { return (n_pulses_ + 1) * tau_arm_; }

    std::vector<double> pulse_times() const;

    // +1 on [0, tau_arm), flipping sign at every pi pulse. Throws outside the window.
    int toggling(double t) const;

    // Pulse area of the pi-pulse train, N * pi.
    double drive_phase() const noexcept;

private:
    int n_pulses_;
    double tau_arm_;
    bool bracket_;
};

enum class Integral {
    definite,    // integral over [0, T]
    indefinite,  // antiderivative evaluated at T; only meaningful without toggling
};

struct BetaOptions {
    bool toggle{true};
    Integral integral{Integral::definite};
};

// beta = integral of 2 pi N(t) s(t) dt, summed in closed form interval by interval.
double accumulated_beta(std::span<const NoiseComponent> components, std::span<const double> theta,
                        const LockInSchedule& schedule, const BetaOptions& options = {});

// beta is linear in each e^{i theta_k}: beta = sum_k Im(e^{i theta_k} w_k). The
// weights are computed once per schedule and reused for every sample.
class BetaResponse {
public:
    BetaResponse(std::span<const NoiseComponent> components, const LockInSchedule& schedule,
                 const BetaOptions& options = {});

    double operator()(std::span<const double> theta) const;

    std::span<const std::complex<double>> weights() const noexcept { return weights_; }

private:
    std::vector<std::complex<double>> weights_;
};

// ------------------------------ Monte Carlo -----------------------------------

enum class Integrand {
    ramsey,  // |E[cos^{N-1}a cos b - sin^{N-1}a sin b]| / cos^{N-1}a
    eq23,    // E[cos(dphi(a, b, gamma))] with dphi the closed-form minimal detectable phase
};

struct McConfig {
    std::size_t samples{2000};
    std::uint64_t master_seed{0};
    int n_atoms{50};
    int n_photons{50};
    double chi{0.0};               // 1/s
    double squeeze_duration{0.0};  // s
    Integrand integrand{Integrand::ramsey};
    BetaOptions beta{};

    double alpha() const noexcept { return chi * squeeze_duration; }
};

struct CurvePoint {
    double x{0.0};
    double estimate{0.0};
    double std_error{0.0};
};

// Seed of sample `sample_index` at grid point `point_index`.
std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t point_index,
                          std::uint64_t sample_index);

// Phases for one noise realization: fixed phases are copied, random ones drawn
// from the stream seeded by sample_seed(...).
std::vector<double> draw_phases(std::span<const NoiseComponent> components,
                                std::uint64_t master_seed, std::uint64_t point_index,
                                std::uint64_t sample_index);

// Integrand for a single realization of the accumulated phase.
double contrast_integrand(double beta, const McConfig& mc, double drive_phase);

// x = tau_arm in ms. `threads` changes speed only.
CurvePoint fringe_contrast_mc(std::span<const NoiseComponent> components,
                              const LockInSchedule& schedule, const McConfig& mc,
                              std::uint64_t point_index = 0, unsigned threads = 1);

// tau_arm_grid in seconds; grid index is the point index.
std::vector<CurvePoint> contrast_curve(std::span<const NoiseComponent> components, int n_pulses,
                                       std::span<const double> tau_arm_grid, const McConfig& mc,
                                       bool bracket = true, unsigned threads = 1);

// Widest contiguous run of points with estimate >= threshold, as (x_low, x_high).
// Ties go to the earliest run.
std::pair<double, double> measurement_range(std::span<const CurvePoint> curve, double threshold);

// ------------------------------ sensitivity -----------------------------------

// Time spent accumulating signal: N * tau_arm.
double coherent_time(int n_pulses, double tau_arm);

// Wall time of one repetition: lock-in window plus squeezing; pulses are instantaneous.
double cycle_time(double sequence_duration, double squeeze_duration);

// S = dphi / (A * 2 pi T_coh) * sqrt(T_cycle) in Hz/sqrt(Hz).
double sensitivity(double phase_resolution, double contrast, double coherent, double cycle);

// duration_grid holds T = (N+1) tau_arm in seconds. One curve per entry of
// n_atoms_list, x = T in ms. Grid index is the point index, so every atom number
// sees the same noise realizations.
std::vector<std::vector<CurvePoint>> sensitivity_curve(std::span<const NoiseComponent> components,
                                                       int n_pulses,
                                                       std::span<const int> n_atoms_list,
                                                       std::span<const double> duration_grid,
                                                       const McConfig& mc, bool bracket = true,
                                                       unsigned threads = 1);

}  // namespace spinlock::lockin

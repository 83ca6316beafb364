#include "doctest.h"

#include "spinlock/errors.hpp"
#include "spinlock/noise_lockin.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace spinlock;
using namespace spinlock::lockin;

namespace {

constexpr double kPi = std::numbers::pi;

// Adaptive quadrature of 2 pi N(t) s(t), one smooth piece per inter-pulse interval.
double beta_by_quadrature(const std::vector<NoiseComponent>& comps,
                          const std::vector<double>& theta, int n_pulses, double tau_arm,
                          bool toggle) {
    using boost::math::quadrature::gauss_kronrod;
    auto noise = [&](double t) {
        double sum = 0.0;
        for (std::size_t k = 0; k < comps.size(); ++k) {
            sum += comps[k].amplitude_hz * std::cos(theta[k] + 2 * kPi * comps[k].freq_hz * t);
        }
        return 2 * kPi * sum;
    };
    double total = 0.0;
    for (int j = 0; j <= n_pulses; ++j) {
        const double sign = toggle && j % 2 ? -1.0 : 1.0;
        total += sign * gauss_kronrod<double, 31>::integrate(noise, j * tau_arm, (j + 1) * tau_arm,
                                                             10, 1e-12);
    }
    return total;
}

}  // namespace

TEST_CASE("unit conversions") {
    const std::vector<NoiseComponent> ref = reference_noise_set();
    REQUIRE(ref.size() == 3);
    CHECK(ref[0].amplitude_hz == doctest::Approx(15.12).epsilon(1e-14));
    CHECK(ref[0].freq_hz == 50.0);
    CHECK(ref[1].amplitude_hz == doctest::Approx(10.92).epsilon(1e-14));
    CHECK(ref[1].freq_hz == 100.0);
    CHECK(ref[2].amplitude_hz == doctest::Approx(40.0 / 2.1).epsilon(1e-14));
    CHECK(ref[2].freq_hz == 2.1);
    for (const NoiseComponent& c : ref) CHECK(c.random_phase());
    CHECK(from_field_pt(1000.0, 10.0, 14.0).amplitude_hz == doctest::Approx(14.0));
}

TEST_CASE("component validation") {
    CHECK_THROWS_AS(validate({1.0, 0.0, std::nullopt}), ConfigError);
    CHECK_THROWS_AS(validate({1.0, -5.0, std::nullopt}), ConfigError);
    CHECK_THROWS_AS(validate({-1.0, 5.0, std::nullopt}), ConfigError);
    CHECK_THROWS_AS(validate({NAN, 5.0, std::nullopt}), ConfigError);
    CHECK_THROWS_AS(validate({1.0, 5.0, INFINITY}), ConfigError);
    CHECK_NOTHROW(validate({0.0, 5.0, 0.3}));
    CHECK_THROWS_AS(from_slow_hz2(40.0, 0.0), ConfigError);
}

TEST_CASE("synth_noise") {
    CHECK(synth_noise({}, {}, 0.37) == 0.0);
    const std::vector<NoiseComponent> one{{15.12, 50.0, 0.0}};
    const std::vector<double> zero{0.0};
    CHECK(synth_noise(one, zero, 0.0) == doctest::Approx(15.12));
    CHECK(synth_noise(one, zero, 1.0 / (2 * 50.0)) == doctest::Approx(-15.12));
    const std::vector<double> two{0.0, 1.0};
    CHECK_THROWS_AS(synth_noise(one, two, 0.0), ContractError);
}

TEST_CASE("lock-in schedule") {
    const LockInSchedule s(7, 1e-3);
    CHECK(s.total_duration() == doctest::Approx(8e-3));
    CHECK(s.drive_phase() == doctest::Approx(7 * kPi));
    const std::vector<double> times = s.pulse_times();
    REQUIRE(times.size() == 7);
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);

    CHECK(s.toggling(0.0) == 1);
    CHECK(s.toggling(1e-3 - 1e-9) == 1);
    CHECK(s.toggling(1e-3 + 1e-9) == -1);
    CHECK(s.toggling(8e-3 - 1e-9) == -1);
    CHECK(s.toggling(8e-3) == -1);
    CHECK_THROWS_AS(s.toggling(-1e-9), ContractError);
    CHECK_THROWS_AS(s.toggling(8e-3 + 1e-9), ContractError);

    int flips = 0;
    int last = s.toggling(0.0);
    for (int i = 1; i <= 8000; ++i) {
        const int now = s.toggling(i * 1e-6 - 5e-7);
        if (now != last) ++flips;
        last = now;
    }
    CHECK(flips == 7);

    CHECK_THROWS_AS(LockInSchedule(0, 1e-3), ConfigError);
    CHECK_THROWS_AS(LockInSchedule(3, 0.0), ConfigError);
    CHECK_THROWS_AS(LockInSchedule(3, -1.0), ConfigError);
}

TEST_CASE("accumulated phase examples") {
    const LockInSchedule s(7, 5e-3);

    SUBCASE("zero amplitude") {
        const std::vector<NoiseComponent> c{{0.0, 50.0, std::nullopt}, {0.0, 3.0, std::nullopt}};
        CHECK(accumulated_beta(c, std::vector<double>{0.4, 1.0}, s) == 0.0);
    }

    SUBCASE("resonant component accumulates coherently") {
        // f = 1/(2 tau): every interval adds -2 (A/f) sin(theta)
        const double a = 3.0, f = 100.0;
        const std::vector<NoiseComponent> c{{a, f, std::nullopt}};
        double largest = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double theta = 2 * kPi * i / 64;
            const double beta = accumulated_beta(c, std::vector<double>{theta}, s);
            CHECK(beta == doctest::Approx(-16.0 * a / f * std::sin(theta)).scale(1.0));
            largest = std::max(largest, std::abs(beta));
        }
        CHECK(largest == doctest::Approx(16.0 * a / f));
    }

    SUBCASE("component at 1/tau cancels") {
        const std::vector<NoiseComponent> c{{3.0, 200.0, std::nullopt}};
        for (double theta : {0.0, 0.7, 2.0}) {
            CHECK(std::abs(accumulated_beta(c, std::vector<double>{theta}, s)) < 1e-12);
        }
    }

    SUBCASE("phase count mismatch") {
        const std::vector<NoiseComponent> c{{3.0, 200.0, std::nullopt}};
        CHECK_THROWS_AS(accumulated_beta(c, std::vector<double>{}, s), ContractError);
    }
}

TEST_CASE("closed form matches adaptive quadrature") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> amp(0.0, 20.0);
    std::uniform_real_distribution<double> freq(0.5, 300.0);
    std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
    std::uniform_real_distribution<double> arm(0.5e-3, 20e-3);
    std::uniform_int_distribution<int> pulses(1, 12);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<NoiseComponent> c;
        std::vector<double> theta;
        for (int k = 0; k < 3; ++k) {
            c.push_back({amp(rng), freq(rng), std::nullopt});
            theta.push_back(phase(rng));
        }
        const int n = pulses(rng);
        const double tau = arm(rng);
        const LockInSchedule s(n, tau);
        const bool toggle = trial % 3 != 0;
        const BetaOptions opts{toggle, Integral::definite};
        const double closed = accumulated_beta(c, theta, s, opts);
        CAPTURE(trial);
        CHECK(std::abs(closed - beta_by_quadrature(c, theta, n, tau, toggle)) < 1e-8);
        CHECK(std::abs(closed - BetaResponse(c, s, opts)(theta)) < 1e-10);
    }
}

TEST_CASE("integration conventions without toggling") {
    const LockInSchedule s(3, 2e-3);
    const double a = 4.0, f = 37.0, theta = 0.9;
    const std::vector<NoiseComponent> c{{a, f, std::nullopt}};
    const std::vector<double> th{theta};
    const double t = s.total_duration();
    const double indefinite = accumulated_beta(c, th, s, {false, Integral::indefinite});
    CHECK(indefinite == doctest::Approx(a / f * std::sin(theta + 2 * kPi * f * t)));
    const double definite = accumulated_beta(c, th, s, {false, Integral::definite});
    CHECK(definite == doctest::Approx(indefinite - a / f * std::sin(theta)));
    CHECK(BetaResponse(c, s, {false, Integral::indefinite})(th) == doctest::Approx(indefinite));
    CHECK_THROWS_AS(accumulated_beta(c, th, s, {true, Integral::indefinite}), ConfigError);
    CHECK_THROWS_AS(BetaResponse(c, s, {true, Integral::indefinite}), ConfigError);
}

TEST_CASE("accumulated phase is linear in each amplitude") {
    const LockInSchedule s(7, 3.3e-3);
    const std::vector<double> theta{0.3, 2.2};
    const std::vector<NoiseComponent> base{{1.0, 50.0, std::nullopt}, {2.0, 7.0, std::nullopt}};
    const std::vector<NoiseComponent> only_first{{1.0, 50.0, std::nullopt}, {0.0, 7.0, std::nullopt}};
    const std::vector<NoiseComponent> scaled{{3.5, 50.0, std::nullopt}, {2.0, 7.0, std::nullopt}};
    const double b0 = accumulated_beta(base, theta, s);
    const double b1 = accumulated_beta(only_first, theta, s);
    const double b2 = accumulated_beta(scaled, theta, s);
    CHECK(std::abs((b2 - b0) - 2.5 * b1) < 1e-12);
}

#include "spinlock/analytic.hpp"

#include "spinlock/errors.hpp"

#include <cmath>
#include <string>

namespace spinlock::analytic {

namespace {

void check_atoms(int n_atoms) {
    if (n_atoms < 1) {
        throw ConfigError("n_atoms must be positive, got " + std::to_string(n_atoms));
    }
}

// cos^{N-1} a sin b + sin^{N-1} a cos b
double jz_bracket(const PhaseTriple& p, int n_atoms) {
    return cos_factor(p.alpha, n_atoms) * std::sin(p.beta) +
           sin_factor(p.alpha, n_atoms) * std::cos(p.beta);
}

}  // namespace

double int_pow(double x, int n) {
    if (n < 0) {
        throw ContractError("int_pow: negative exponent");
    }
    double result = 1.0;
    double base = x;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

double cos_factor(double alpha, int n_atoms) {
    check_atoms(n_atoms);
    return int_pow(std::cos(alpha), n_atoms - 1);
}

double sin_factor(double alpha, int n_atoms) {
    check_atoms(n_atoms);
    return int_pow(std::sin(alpha), n_atoms - 1);
}

double expect_jx(const PhaseTriple& p, int n_atoms) {
    const double half_n = 0.5 * n_atoms;
    return half_n * cos_factor(p.alpha, n_atoms) * std::cos(p.beta) -
           half_n * sin_factor(p.alpha, n_atoms) * std::sin(p.beta);
}

double expect_jz(const PhaseTriple& p, int n_atoms) {
    return 0.5 * n_atoms * jz_bracket(p, n_atoms) * std::sin(p.gamma);
}

double fringe_denominator(const PhaseTriple& p, int n_atoms) {
    return std::cos(p.beta) * cos_factor(p.alpha, n_atoms) -
           std::sin(p.beta) * sin_factor(p.alpha, n_atoms);
}

double min_detectable_phase(const PhaseTriple& p, int n_atoms) {
    const double denominator = fringe_denominator(p, n_atoms);
    if (!(std::abs(denominator) > kFringeNodeThreshold)) {
        throw FringeNodeError("min_detectable_phase: fringe node, denominator = " +
                              std::to_string(denominator));
    }
    const double shift = jz_bracket(p, n_atoms) * std::sin(p.gamma);
    double radicand = 1.0 / n_atoms - shift * shift;
    if (radicand < 0.0) {
        if (radicand < -kRadicandTolerance) {
            throw DomainError("min_detectable_phase: negative radicand " +
                              std::to_string(radicand));
        }
        radicand = 0.0;
    }
    return std::abs(std::sqrt(radicand) / denominator);
}

double sql_phase(int n_atoms) {
    check_atoms(n_atoms);
    return 1.0 / std::sqrt(static_cast<double>(n_atoms));
}

}  // namespace spinlock::analytic

#pragma once

// Side-by-side evaluation of the closed-form expressions and exact Dicke-basis
// evolution of the x-polarized CSS. Residuals are reported, never asserted zero.

#include "spinlock/spin_core.hpp"

#include <string>
#include <string_view>

namespace spinlock::compare {

using spin::PhaseTriple;

// How the three phases are composed into one evolution operator.
enum class Ordering {
    product,             // exp(-i g Jx) exp(-i b Jz) exp(-i a Jz^2): squeeze, signal, drive
    reversed_product,    // exp(-i a Jz^2) exp(-i b Jz) exp(-i g Jx)
    single_exponential,  // exp(-i (a Jz^2 + b Jz + g Jx))
};

Ordering parse_ordering(std::string_view name);
std::string_view to_string(Ordering ordering);

struct ExactValues {
    double jx;
    double jz;
    double variance_jz;
    double min_detectable_phase;  // sqrt(Var Jz) / |<Jx>|, NaN when <Jx> vanishes
};

spin::DickeState evolve_css(const PhaseTriple& phases, int n_atoms, Ordering ordering);

ExactValues exact_values(const PhaseTriple& phases, int n_atoms, Ordering ordering);

struct Residual {
    PhaseTriple phases;
    int n_atoms;
    Ordering ordering;
    double jx_analytic;
    double jx_oracle;
    double jz_analytic;
    double jz_oracle;
    double dphi_analytic;  // NaN at fringe nodes or outside the radicand domain
    double dphi_oracle;
};

Residual compare(const PhaseTriple& phases, int n_atoms, Ordering ordering = Ordering::product);

}  // namespace spinlock::compare

#include "spinlock/oracle_compare.hpp"

#include "spinlock/analytic.hpp"
#include "spinlock/errors.hpp"

#include <cmath>
#include <limits>

namespace spinlock::compare {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

Ordering parse_ordering(std::string_view name) {
    if (name == "product") return Ordering::product;
    if (name == "reversed_product") return Ordering::reversed_product;
    if (name == "single_exponential") return Ordering::single_exponential;
    throw ConfigError("unknown ordering '" + std::string(name) +
                      "' (expected product, reversed_product or single_exponential)");
}

std::string_view to_string(Ordering ordering) {
    switch (ordering) {
        case Ordering::product: return "product";
        case Ordering::reversed_product: return "reversed_product";
        case Ordering::single_exponential: return "single_exponential";
    }
    return "unknown";
}

spin::DickeState evolve_css(const PhaseTriple& p, int n_atoms, Ordering ordering) {
    using spin::Generator;
    const spin::CollectiveOps ops = spin::build_collective_ops(n_atoms);
    const spin::DickeState css = spin::x_polarized_css(n_atoms);
    switch (ordering) {
        case Ordering::product:
            return spin::apply_schedule(css, ops,
                                        {{Generator::jz2, p.alpha},
                                         {Generator::jz, p.beta},
                                         {Generator::jx, p.gamma}});
        case Ordering::reversed_product:
            return spin::apply_schedule(css, ops,
                                        {{Generator::jx, p.gamma},
                                         {Generator::jz, p.beta},
                                         {Generator::jz2, p.alpha}});
        case Ordering::single_exponential: {
            const auto generator = spin::CollectiveOperator::make_hermitian(
                p.alpha * ops.jz2.matrix() + p.beta * ops.jz.matrix() + p.gamma * ops.jx.matrix());
            return spin::evolve_unitary(css, generator, 1.0);
        }
    }
    throw ContractError("evolve_css: unknown ordering");
}

ExactValues exact_values(const PhaseTriple& p, int n_atoms, Ordering ordering) {
    const spin::CollectiveOps ops = spin::build_collective_ops(n_atoms);
    const spin::DickeState state = evolve_css(p, n_atoms, ordering);
    const double jx = spin::expect(state, ops.jx);
    const double jz = spin::expect(state, ops.jz);
    const double var = spin::variance(state, ops.jz);
    const double dphi =
        std::abs(jx) > analytic::kFringeNodeThreshold ? std::sqrt(var) / std::abs(jx) : kNaN;
    return {jx, jz, var, dphi};
}

Residual compare(const PhaseTriple& p, int n_atoms, Ordering ordering) {
    const ExactValues exact = exact_values(p, n_atoms, ordering);
    double dphi = kNaN;
    try {
        dphi = analytic::min_detectable_phase(p, n_atoms);
    } catch (const FringeNodeError&) {
    } catch (const DomainError&) {
    }
    return {p,
            n_atoms,
            ordering,
            analytic::expect_jx(p, n_atoms),
            exact.jx,
            analytic::expect_jz(p, n_atoms),
            exact.jz,
            dphi,
            exact.min_detectable_phase};
}

}  // namespace spinlock::compare

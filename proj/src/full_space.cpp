// Brute-force product-space simulation: 2^N amplitudes, one Pauli triple per atom.

#include "spinlock/errors.hpp"
#include "spinlock/spin_core.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <string>

namespace spinlock::spin {

namespace {

// sigma_mu acting on atom `site` of n, identity elsewhere. Atom 0 is the most
// significant factor; |up> is local index 0.
Matrix embed(const Matrix& local, int site, int n) {
    Matrix out = Matrix::Identity(1, 1);
    for (int a = 0; a < n; ++a) {
        const Matrix factor = (a == site) ? local : Matrix::Identity(2, 2);
        Matrix next = Eigen::kroneckerProduct(out, factor).eval();
        out = std::move(next);
    }
    return out;
}

struct FullSpaceOps {
    CollectiveOperator jx;
    CollectiveOperator jy;
    CollectiveOperator jz;
    CollectiveOperator jz2;
};

FullSpaceOps build_full_ops(int n) {
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    sz << 1.0, 0.0, 0.0, -1.0;

    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix jx = Matrix::Zero(dim, dim);
    Matrix jy = Matrix::Zero(dim, dim);
    Matrix jz = Matrix::Zero(dim, dim);
    for (int a = 0; a < n; ++a) {
        jx += 0.5 * embed(sx, a, n);
        jy += 0.5 * embed(sy, a, n);
        jz += 0.5 * embed(sz, a, n);
    }
    Matrix jz2 = jz * jz;
    return {CollectiveOperator::make_hermitian(std::move(jx)),
            CollectiveOperator::make_hermitian(std::move(jy)),
            CollectiveOperator::make_hermitian(std::move(jz)),
            CollectiveOperator::make_hermitian(std::move(jz2))};
}

const CollectiveOperator& pick(const FullSpaceOps& ops, Generator g) {
    switch (g) {
        case Generator::jx: return ops.jx;
        case Generator::jy: return ops.jy;
        case Generator::jz: return ops.jz;
        case Generator::jz2: return ops.jz2;
    }
    throw ContractError("full_space_oracle: unknown generator");
}

double real_expectation(const Vector& psi, const CollectiveOperator& op) {
    return psi.dot(op.matrix() * psi).real();
}

}  // namespace

ExpectationSet full_space_oracle(int n_atoms, const PulseSchedule& schedule, double theta,
                                 double phi) {
    if (n_atoms < 1 || n_atoms > kMaxFullSpaceAtoms) {
        throw ConfigError("full_space_oracle: n_atoms must lie in [1, " +
                          std::to_string(kMaxFullSpaceAtoms) + "], got " +
                          std::to_string(n_atoms));
    }
    const FullSpaceOps ops = build_full_ops(n_atoms);

    Vector single(2);
    single << std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi);
    Vector psi = Vector::Ones(1);
    for (int a = 0; a < n_atoms; ++a) {
        Vector next = Eigen::kroneckerProduct(psi, single).eval();
        psi = std::move(next);
    }

    for (const PulseStep& step : schedule) {
        psi = propagator(pick(ops, step.generator), step.phase) * psi;
    }
    return {real_expectation(psi, ops.jx), real_expectation(psi, ops.jy),
            real_expectation(psi, ops.jz), real_expectation(psi, ops.jz2)};
}

}  // namespace spinlock::spin

#include "spinlock/spin_core.hpp"

#include "spinlock/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace spinlock::spin {

namespace {

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_same_dim(const DickeState& state, const CollectiveOperator& op, const char* what) {
    if (state.dim() != op.dim()) {
        throw ContractError(std::string(what) + ": operator dimension " + std::to_string(op.dim()) +
                            " does not match state dimension " + std::to_string(state.dim()));
    }
}

}  // namespace

CollectiveOperator::CollectiveOperator(Matrix entries, bool hermitian, bool unitary)
    : entries_(std::move(entries)), hermitian_(hermitian), unitary_(unitary) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw ContractError("CollectiveOperator: matrix must be square and non-empty");
    }
    if (hermitian_ && max_abs(entries_ - entries_.adjoint()) >= kHermitianTolerance) {
        throw ContractError("CollectiveOperator: entries are not Hermitian");
    }
    if (unitary_) {
        const Matrix defect = entries_.adjoint() * entries_ - Matrix::Identity(dim(), dim());
        if (max_abs(defect) >= kUnitaryTolerance) {
            throw ContractError("CollectiveOperator: entries are not unitary");
        }
    }
}

DickeState::DickeState(int n_atoms, Vector amplitudes)
    : n_atoms_(n_atoms), amplitudes_(std::move(amplitudes)) {
    if (n_atoms_ < 1) {
        throw ContractError("DickeState: n_atoms must be positive");
    }
    if (amplitudes_.size() != n_atoms_ + 1) {
        throw ContractError("DickeState: expected " + std::to_string(n_atoms_ + 1) +
                            " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    if (std::abs(amplitudes_.norm() - 1.0) >= kNormTolerance) {
        throw ContractError("DickeState: amplitudes are not normalized");
    }
}

DickeState DickeState::normalized(int n_atoms, Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ContractError("DickeState: cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return DickeState(n_atoms, std::move(amplitudes));
}

DickeState DickeState::basis(int n_atoms, int k) {
    if (k < 0 || k > n_atoms) {
        throw ContractError("DickeState::basis: index out of range");
    }
    Vector v = Vector::Zero(n_atoms + 1);
    v(k) = 1.0;
    return DickeState(n_atoms, std::move(v));
}

SpinMatrices spin_matrices(int two_j) {
    if (two_j < 1) {
        throw ConfigError("spin_matrices: 2j must be positive");
    }
    const Eigen::Index dim = two_j + 1;
    const double j = 0.5 * two_j;

    Matrix raise = Matrix::Zero(dim, dim);
    Matrix z = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double m = j - static_cast<double>(k);
        z(k, k) = m;
        if (k > 0) {
            // <m+1| J+ |m>
            raise(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        }
    }
    const Matrix lower = raise.adjoint();
    const Complex half_i(0.0, 0.5);
    return {0.5 * (raise + lower), -half_i * (raise - lower), std::move(z)};
}

CollectiveOps build_collective_ops(int n_atoms) {
    if (n_atoms < 1 || n_atoms > kMaxAtoms) {
        throw ConfigError("build_collective_ops: n_atoms must lie in [1, " +
                          std::to_string(kMaxAtoms) + "], got " + std::to_string(n_atoms));
    }
    SpinMatrices s = spin_matrices(n_atoms);
    Matrix z2 = s.z * s.z;
    return {CollectiveOperator::make_hermitian(std::move(s.x)),
            CollectiveOperator::make_hermitian(std::move(s.y)),
            CollectiveOperator::make_hermitian(std::move(s.z)),
            CollectiveOperator::make_hermitian(std::move(z2))};
}

DickeState css_state(int n_atoms, double theta, double phi) {
    if (n_atoms < 1 || n_atoms > kMaxAtoms) {
        throw ConfigError("css_state: n_atoms out of range");
    }
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double log_c = std::log(std::abs(c));
    const double log_s = std::log(std::abs(s));
    const double log_n_fact = std::lgamma(n_atoms + 1.0);

    Vector amps(n_atoms + 1);
    for (int k = 0; k <= n_atoms; ++k) {
        const int up = n_atoms - k;
        // k flipped spins: sqrt(C(N,k)) c^(N-k) (e^{i phi} s)^k
        double log_mag = 0.5 * (log_n_fact - std::lgamma(k + 1.0) - std::lgamma(up + 1.0));
        if (up > 0) log_mag += up * log_c;
        if (k > 0) log_mag += k * log_s;
        double sign = 1.0;
        if (c < 0.0 && up % 2 == 1) sign = -sign;
        if (s < 0.0 && k % 2 == 1) sign = -sign;
        amps(k) = sign * std::exp(log_mag) * std::polar(1.0, k * phi);
    }
    return DickeState::normalized(n_atoms, std::move(amps));
}

DickeState x_polarized_css(int n_atoms) {
    return css_state(n_atoms, std::numbers::pi / 2.0, 0.0);
}

Matrix propagator(const CollectiveOperator& generator, double phase) {
    if (!generator.hermitian()) {
        throw ContractError("propagator: generator must be Hermitian");
    }
    const Matrix& h = generator.matrix();
    // Diagonal generators (Jz, Jz^2) need no decomposition.
    if (max_abs(h - Matrix(h.diagonal().asDiagonal())) == 0.0) {
        Vector phases(h.rows());
        for (Eigen::Index k = 0; k < h.rows(); ++k) {
            phases(k) = std::polar(1.0, -phase * h(k, k).real());
        }
        return phases.asDiagonal();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error("propagator: eigendecomposition failed");
    }
    const Eigen::VectorXd& evals = solver.eigenvalues();
    Vector phases(evals.size());
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        phases(k) = std::polar(1.0, -phase * evals(k));
    }
    const Matrix& v = solver.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

DickeState evolve_unitary(const DickeState& state, const CollectiveOperator& generator,
                          double duration_phase) {
    require_same_dim(state, generator, "evolve_unitary");
    Vector out = propagator(generator, duration_phase) * state.amplitudes();
    return DickeState(state.n_atoms(), std::move(out));
}

double expect(const DickeState& state, const CollectiveOperator& op) {
    require_same_dim(state, op, "expect");
    if (!op.hermitian()) {
        throw ContractError("expect: operator must be Hermitian");
    }
    const Complex value = state.amplitudes().dot(op.matrix() * state.amplitudes());
    if (std::abs(value.imag()) >= kImaginaryTolerance) {
        throw DomainError("expect: imaginary part " + std::to_string(value.imag()) +
                          " exceeds tolerance");
    }
    return value.real();
}

double variance(const DickeState& state, const CollectiveOperator& op) {
    require_same_dim(state, op, "variance");
    if (!op.hermitian()) {
        throw ContractError("variance: operator must be Hermitian");
    }
    const Vector applied = op.matrix() * state.amplitudes();
    const double mean = state.amplitudes().dot(applied).real();
    // <A^2> = |A psi|^2 for Hermitian A
    const double var = applied.squaredNorm() - mean * mean;
    if (var >= 0.0) return var;
    if (var > -kVarianceClamp) return 0.0;
    throw DomainError("variance: negative value " + std::to_string(var));
}

const CollectiveOperator& select(const CollectiveOps& ops, Generator g) {
    switch (g) {
        case Generator::jx: return ops.jx;
        case Generator::jy: return ops.jy;
        case Generator::jz: return ops.jz;
        case Generator::jz2: return ops.jz2;
    }
    throw ContractError("select: unknown generator");
}

DickeState apply_schedule(const DickeState& state, const CollectiveOps& ops,
                          const PulseSchedule& schedule) {
    DickeState current = state;
    for (const PulseStep& step : schedule) {
        current = evolve_unitary(current, select(ops, step.generator), step.phase);
    }
    return current;
}

ExpectationSet expectations(const DickeState& state, const CollectiveOps& ops) {
    return {expect(state, ops.jx), expect(state, ops.jy), expect(state, ops.jz),
            expect(state, ops.jz2)};
}

ExpectationSet dicke_expectations(int n_atoms, const PulseSchedule& schedule, double theta,
                                  double phi) {
    const CollectiveOps ops = build_collective_ops(n_atoms);
    return expectations(apply_schedule(css_state(n_atoms, theta, phi), ops, schedule), ops);
}

}  // namespace spinlock::spin

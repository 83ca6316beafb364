#include "spinlock/photon_atom.hpp"

#include "spinlock/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <string>

namespace spinlock::photon {

namespace {

void check_sizes(int n_photons, int n_atoms) {
    if (n_photons < 1 || n_photons > kMaxPhotons) {
        throw ConfigError("n_photons must lie in [1, " + std::to_string(kMaxPhotons) + "], got " +
                          std::to_string(n_photons));
    }
    if (n_atoms < 1) {
        throw ConfigError("n_atoms must be positive");
    }
    const Eigen::Index joint = Eigen::Index{n_photons + 1} * (n_atoms + 1);
    if (joint > kMaxJointDim) {
        throw ConfigError("joint photon-atom dimension " + std::to_string(joint) +
                          " exceeds dense limit " + std::to_string(kMaxJointDim));
    }
}

// exp(-i phase A (x) B) for Hermitian A, B via their separate eigenbases.
Matrix exp_product_generator(const Matrix& a, const Matrix& b, double phase) {
    Eigen::SelfAdjointEigenSolver<Matrix> ea(a);
    Eigen::SelfAdjointEigenSolver<Matrix> eb(b);
    if (ea.info() != Eigen::Success || eb.info() != Eigen::Success) {
        throw Error("exp_product_generator: eigendecomposition failed");
    }
    const Eigen::Index na = a.rows();
    const Eigen::Index nb = b.rows();
    Vector phases(na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < nb; ++j) {
            phases(i * nb + j) =
                std::polar(1.0, -phase * ea.eigenvalues()(i) * eb.eigenvalues()(j));
        }
    }
    const Matrix v = Eigen::kroneckerProduct(ea.eigenvectors(), eb.eigenvectors()).eval();
    return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace

StokesOps build_stokes_ops(int n_photons) {
    if (n_photons < 1 || n_photons > kMaxPhotons) {
        throw ConfigError("build_stokes_ops: n_photons must lie in [1, " +
                          std::to_string(kMaxPhotons) + "], got " + std::to_string(n_photons));
    }
    const Eigen::Index dim = n_photons + 1;
    Matrix number_diff = Matrix::Zero(dim, dim);
    Matrix hop = Matrix::Zero(dim, dim);  // a_x^dag a_y
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double nx = static_cast<double>(n_photons - k);
        const double ny = static_cast<double>(k);
        number_diff(k, k) = 0.5 * (nx - ny);
        if (k > 0) {
            // |nx, ny> -> sqrt((nx+1) ny) |nx+1, ny-1>
            hop(k - 1, k) = std::sqrt((nx + 1.0) * ny);
        }
    }
    const Matrix hop_dag = hop.adjoint();
    Matrix sy = 0.5 * (hop + hop_dag);
    Matrix sz = Complex(0.0, -0.5) * (hop - hop_dag);
    return {n_photons, CollectiveOperator::make_hermitian(std::move(number_diff)),
            CollectiveOperator::make_hermitian(std::move(sy)),
            CollectiveOperator::make_hermitian(std::move(sz))};
}

JointState::JointState(Eigen::Index photon_dim, Eigen::Index atom_dim, Vector amplitudes)
    : photon_dim_(photon_dim), atom_dim_(atom_dim), amplitudes_(std::move(amplitudes)) {
    if (photon_dim_ < 1 || atom_dim_ < 1 || amplitudes_.size() != photon_dim_ * atom_dim_) {
        throw ContractError("JointState: amplitude count does not match photon_dim * atom_dim");
    }
    if (std::abs(amplitudes_.norm() - 1.0) >= spin::kNormTolerance) {
        throw ContractError("JointState: amplitudes are not normalized");
    }
}

JointState JointState::product(const Vector& photon, const spin::DickeState& atoms) {
    Vector joint = Eigen::kroneckerProduct(photon, atoms.amplitudes()).eval();
    return JointState(photon.size(), atoms.dim(), std::move(joint));
}

double effective_chi(int n_photons, double g, double tau) {
    return n_photons * g * g * tau / 8.0;
}

SqueezeParams SqueezeParams::from_coupling(double g, double tau, int n_photons) {
    return {g, tau, effective_chi(n_photons, g, tau)};
}

CollectiveOperator u4_sequence(const SqueezeParams& params, int n_photons, int n_atoms) {
    check_sizes(n_photons, n_atoms);
    const StokesOps stokes = build_stokes_ops(n_photons);
    const spin::SpinMatrices atoms = spin::spin_matrices(n_atoms);
    const Eigen::Index atom_dim = n_atoms + 1;

    const Matrix pulse = Eigen::kroneckerProduct(
                             spin::propagator(stokes.sx, std::numbers::pi / 2.0),
                             Matrix::Identity(atom_dim, atom_dim))
                             .eval();
    const Matrix free = exp_product_generator(stokes.sz.matrix(), atoms.z, params.g_tau());
    const Matrix step = pulse * free;
    const Matrix two = step * step;
    return CollectiveOperator::make_unitary(two * two);
}

CollectiveOperator effective_unitary(const SqueezeParams& params, int n_photons, int n_atoms) {
    check_sizes(n_photons, n_atoms);
    const double phase = params.g_tau() * params.g_tau();
    const Eigen::Index atom_dim = n_atoms + 1;
    const Eigen::Index dim = Eigen::Index{n_photons + 1} * atom_dim;
    // Sx (x) Jz^2 is diagonal in the Fock (x) Dicke basis.
    Vector diag(dim);
    for (Eigen::Index p = 0; p <= n_photons; ++p) {
        const double sx = 0.5 * n_photons - static_cast<double>(p);
        for (Eigen::Index a = 0; a < atom_dim; ++a) {
            const double m = 0.5 * n_atoms - static_cast<double>(a);
            diag(p * atom_dim + a) = std::polar(1.0, -phase * sx * m * m);
        }
    }
    return CollectiveOperator::make_unitary(Matrix(diag.asDiagonal()));
}

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix align_global_phase(const Matrix& candidate, const Matrix& reference) {
    if (candidate.rows() != reference.rows() || candidate.cols() != reference.cols()) {
        throw ContractError("align_global_phase: shape mismatch");
    }
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    reference.cwiseAbs().maxCoeff(&row, &col);
    const Complex ref = reference(row, col);
    const Complex cand = candidate(row, col);
    if (std::abs(cand) == 0.0 || std::abs(ref) == 0.0) {
        return candidate;
    }
    return candidate * std::polar(1.0, std::arg(ref) - std::arg(cand));
}

double bch_error(const SqueezeParams& params, int n_photons, int n_atoms) {
    const CollectiveOperator exact = u4_sequence(params, n_photons, n_atoms);
    const CollectiveOperator approx = effective_unitary(params, n_photons, n_atoms);
    return operator_norm(align_global_phase(exact.matrix(), approx.matrix()) - approx.matrix());
}

Matrix induced_atomic_map(const SqueezeParams& params, int n_photons, int n_atoms) {
    const CollectiveOperator exact = u4_sequence(params, n_photons, n_atoms);
    const Eigen::Index atom_dim = n_atoms + 1;
    return exact.matrix().topLeftCorner(atom_dim, atom_dim);
}

double oat_map_error(const SqueezeParams& params, int n_photons, int n_atoms) {
    const Matrix block = induced_atomic_map(params, n_photons, n_atoms);
    const spin::CollectiveOps ops = spin::build_collective_ops(n_atoms);
    const Matrix oat = spin::propagator(ops.jz2, 4.0 * params.chi * params.tau);
    return operator_norm(align_global_phase(block, oat) - oat);
}

}  // namespace spinlock::photon

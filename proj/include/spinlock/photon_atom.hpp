#pragma once

// Joint photon-atom simulation of the four-pulse squeezing sequence.
//
// Photons: two polarization modes restricted to N_s total photons. Basis index
// k = 0..N_s is the Fock state |n_x = N_s - k, n_y = k>, so Sx is diagonal with
// Sx = N_s/2 - k and index 0 is the maximal Sx eigenstate.
//
// Joint space: photon-major ordering, index = k_photon * (N_a + 1) + k_atom.

#include "spinlock/spin_core.hpp"

namespace spinlock::photon {

using spin::CollectiveOperator;
using spin::Complex;
using spin::Matrix;
using spin::Vector;

inline constexpr int kMaxPhotons = 200;
inline constexpr Eigen::Index kMaxJointDim = 10'000;

struct StokesOps {
    int n_photons;
    CollectiveOperator sx;  // (a_x^dag a_x - a_y^dag a_y) / 2
    CollectiveOperator sy;  // (a_x^dag a_y + a_y^dag a_x) / 2
    CollectiveOperator sz;  // (a_x^dag a_y - a_y^dag a_x) / 2i
};

StokesOps build_stokes_ops(int n_photons);

class JointState {
public:
    JointState(Eigen::Index photon_dim, Eigen::Index atom_dim, Vector amplitudes);

    // photon (x) atom
    static JointState product(const Vector& photon, const spin::DickeState& atoms);

    Eigen::Index photon_dim() const noexcept { return photon_dim_; }
    Eigen::Index atom_dim() const noexcept { return atom_dim_; }
    const Vector& amplitudes() const noexcept { return amplitudes_; }

private:
    Eigen::Index photon_dim_;
    Eigen::Index atom_dim_;
    Vector amplitudes_;
};

struct SqueezeParams {
    double g{1.0};    // Faraday coupling rate
    double tau{0.0};  // free-evolution interval between pi/2 pulses
    double chi{0.0};  // effective one-axis-twisting strength

    // chi = N_s g^2 tau / 8
    static SqueezeParams from_coupling(double g, double tau, int n_photons);

    double g_tau() const noexcept { return g * tau; }
};

double effective_chi(int n_photons, double g, double tau);

// [R_S(pi/2) U(tau)]^4 with R_S = exp(-i pi/2 Sx) and U = exp(-i g tau Sz Jz).
CollectiveOperator u4_sequence(const SqueezeParams& params, int n_photons, int n_atoms);

// exp(-i (g tau)^2 Sx Jz^2), the leading term of the BCH expansion of U4.
CollectiveOperator effective_unitary(const SqueezeParams& params, int n_photons, int n_atoms);

// Largest singular value.
double operator_norm(const Matrix& m);

// Multiplies `candidate` by the phase that makes its entry at the position of the
// largest-magnitude element of `reference` share that element's argument.
Matrix align_global_phase(const Matrix& candidate, const Matrix& reference);

// ||U4 - U_eff|| after global-phase alignment.
double bch_error(const SqueezeParams& params, int n_photons, int n_atoms);

// Atomic block <Sx = N_s/2| U4 |Sx = N_s/2>.
Matrix induced_atomic_map(const SqueezeParams& params, int n_photons, int n_atoms);

// ||induced_atomic_map - exp(-i 4 chi tau Jz^2)|| after global-phase alignment.
double oat_map_error(const SqueezeParams& params, int n_photons, int n_atoms);

}  // namespace spinlock::photon

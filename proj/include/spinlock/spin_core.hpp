#pragma once

// Collective-spin machinery on the symmetric (Dicke) subspace of N two-level atoms.
//
// Basis convention: index k = 0..N holds |J, m = J - k>, i.e. m descends from +J.
// Jy is built from the ladder operators in this order; flipping the order flips
// the sign of every Jy matrix element.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace spinlock::spin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kImaginaryTolerance = 1e-10;
inline constexpr double kVarianceClamp = 1e-10;
inline constexpr int kMaxAtoms = 10'000;

// Dense operator on a Dicke (or joint) space. The flags are checked on construction.
class CollectiveOperator {
public:
    explicit CollectiveOperator(Matrix entries, bool hermitian = false, bool unitary = false);

    static CollectiveOperator make_hermitian(Matrix entries) {
        return CollectiveOperator(std::move(entries), true, false);
    }
    static CollectiveOperator make_unitary(Matrix entries) {
        return CollectiveOperator(std::move(entries), false, true);
    }

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }
    bool hermitian() const noexcept { return hermitian_; }
    bool unitary() const noexcept { return unitary_; }

private:
    Matrix entries_;
    bool hermitian_;
    bool unitary_;
};

// Pure state of the ensemble in the Dicke basis; always unit norm.
class DickeState {
public:
    // Throws ContractError unless amplitudes has n_atoms + 1 entries and unit norm.
    DickeState(int n_atoms, Vector amplitudes);

    // Rescales amplitudes to unit norm before validation.
    static DickeState normalized(int n_atoms, Vector amplitudes);

    // |J, m> with m = J - k.
    static DickeState basis(int n_atoms, int k);

    int n_atoms() const noexcept { return n_atoms_; }
    double total_spin() const noexcept { return 0.5 * n_atoms_; }
    Eigen::Index dim() const noexcept { return amplitudes_.size(); }
    const Vector& amplitudes() const noexcept { return amplitudes_; }

private:
    int n_atoms_;
    Vector amplitudes_;
};

// Accumulated phases of the evolution operator exp(-i(alpha Jz^2 + beta Jz + gamma Jx)).
struct PhaseTriple {
    double alpha{0.0};  // one-axis twisting, chi * t
    double beta{0.0};   // signal/noise, integral of M(t)
    double gamma{0.0};  // drive, integral of Omega(t)
};

struct CollectiveOps {
    CollectiveOperator jx;
    CollectiveOperator jy;
    CollectiveOperator jz;
    CollectiveOperator jz2;
};

// Raw spin-j matrices (x, y, z) of dimension 2j+1 in the m-descending basis.
struct SpinMatrices {
    Matrix x;
    Matrix y;
    Matrix z;
};
SpinMatrices spin_matrices(int two_j);

CollectiveOps build_collective_ops(int n_atoms);

// Coherent spin state with every atom at polar angle theta and azimuth phi.
DickeState css_state(int n_atoms, double theta, double phi);

// CSS along +x (theta = pi/2, phi = 0).
DickeState x_polarized_css(int n_atoms);

// exp(-i * phase * generator) for a Hermitian generator, via eigendecomposition.
Matrix propagator(const CollectiveOperator& generator, double phase);

DickeState evolve_unitary(const DickeState& state, const CollectiveOperator& generator,
                          double duration_phase);

double expect(const DickeState& state, const CollectiveOperator& op);

double variance(const DickeState& state, const CollectiveOperator& op);

// ------------------------------- schedules -----------------------------------

enum class Generator { jx, jy, jz, jz2 };

// One instantaneous rotation or free-evolution segment: exp(-i * phase * G).
struct PulseStep {
    Generator generator;
    double phase;
};

// Applied front to back, so the first step acts first on the state.
using PulseSchedule = std::vector<PulseStep>;

const CollectiveOperator& select(const CollectiveOps& ops, Generator g);

DickeState apply_schedule(const DickeState& state, const CollectiveOps& ops,
                          const PulseSchedule& schedule);

struct ExpectationSet {
    double jx{0.0};
    double jy{0.0};
    double jz{0.0};
    double jz2{0.0};
};

ExpectationSet expectations(const DickeState& state, const CollectiveOps& ops);

// Schedule evolved in the Dicke basis from the CSS at (theta, phi).
ExpectationSet dicke_expectations(int n_atoms, const PulseSchedule& schedule,
                                  double theta = 1.5707963267948966, double phi = 0.0);

// Same schedule in the full 2^N product space built from single-atom Pauli matrices.
// Independent of the Dicke-basis code path; limited to n_atoms <= 4.
ExpectationSet full_space_oracle(int n_atoms, const PulseSchedule& schedule,
                                 double theta = 1.5707963267948966, double phi = 0.0);

inline constexpr int kMaxFullSpaceAtoms = 4;

}  // namespace spinlock::spin

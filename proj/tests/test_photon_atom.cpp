#include "doctest.h"

#include "spinlock/errors.hpp"
#include "spinlock/photon_atom.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

using namespace spinlock;
using namespace spinlock::photon;

namespace {

double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
    return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

}  // namespace

TEST_CASE("single photon Stokes operators are spin-1/2 matrices") {
    const StokesOps s = build_stokes_ops(1);
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x << 0.5, 0.0, 0.0, -0.5;
    y << 0.0, 0.5, 0.5, 0.0;
    z << 0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0;
    CHECK(max_abs(s.sx.matrix() - x) < 1e-15);
    CHECK(max_abs(s.sy.matrix() - y) < 1e-15);
    CHECK(max_abs(s.sz.matrix() - z) < 1e-15);
}

TEST_CASE("Stokes algebra and spectrum") {
    const Complex i(0.0, 1.0);
    for (int n = 1; n <= 50; ++n) {
        CAPTURE(n);
        const StokesOps s = build_stokes_ops(n);
        const Matrix& x = s.sx.matrix();
        const Matrix& y = s.sy.matrix();
        const Matrix& z = s.sz.matrix();
        CHECK(max_abs(x * y - y * x - i * z) < 1e-12);
        CHECK(max_abs(y * z - z * y - i * x) < 1e-12);
        CHECK(max_abs(z * x - x * z - i * y) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(x);
        CHECK(std::abs(eig.eigenvalues().maxCoeff() - 0.5 * n) < 1e-10);
        // Casimir of a spin-(n/2) irrep
        const Matrix casimir = x * x + y * y + z * z;
        CHECK(max_abs(casimir - 0.25 * n * (n + 2) * Matrix::Identity(n + 1, n + 1)) < 1e-10);
    }
    CHECK_THROWS_AS(build_stokes_ops(0), ConfigError);
    CHECK_THROWS_AS(build_stokes_ops(kMaxPhotons + 1), ConfigError);
}

TEST_CASE("joint states") {
    Vector photon = Vector::Zero(3);
    photon(0) = 1.0;
    const JointState j = JointState::product(photon, spin::x_polarized_css(2));
    CHECK(j.photon_dim() == 3);
    CHECK(j.atom_dim() == 3);
    CHECK(std::abs(j.amplitudes().norm() - 1.0) < 1e-12);
    CHECK(j.amplitudes().tail(6).norm() == 0.0);
    CHECK_THROWS_AS(JointState(2, 2, Vector::Ones(4)), ContractError);
    CHECK_THROWS_AS(JointState(2, 3, Vector::Ones(4) / 2.0), ContractError);
}

TEST_CASE("effective strength") {
    const SqueezeParams p = SqueezeParams::from_coupling(1.0, 1e-4, 50);
    CHECK(p.chi == doctest::Approx(6.25e-4).epsilon(1e-14));
    CHECK(p.g_tau() == 1e-4);
    CHECK(effective_chi(8, 2.0, 0.5) == 2.0);
}

TEST_CASE("four pulses without coupling compose to a 2 pi rotation") {
    for (int ns : {1, 2, 3, 4}) {
        const SqueezeParams p = SqueezeParams::from_coupling(1.0, 0.0, ns);
        const Matrix u = u4_sequence(p, ns, 2).matrix();
        const double sign = ns % 2 ? -1.0 : 1.0;
        CHECK(max_abs(u - sign * Matrix::Identity(u.rows(), u.cols())) < 1e-12);
        CHECK(bch_error(p, ns, 2) < 1e-12);
    }
}

TEST_CASE("returned operators are unitary") {
    const SqueezeParams p = SqueezeParams::from_coupling(1.0, 1e-3, 2);
    CHECK(unitarity_defect(u4_sequence(p, 2, 2).matrix()) < 1e-12);
    for (double gt : {1e-3, 1e-2, 0.3}) {
        const SqueezeParams q = SqueezeParams::from_coupling(1.0, gt, 4);
        CHECK(unitarity_defect(u4_sequence(q, 4, 4).matrix()) < 1e-12);
        CHECK(unitarity_defect(effective_unitary(q, 4, 4).matrix()) < 1e-12);
    }
}

TEST_CASE("effective unitary") {
    SUBCASE("identity without coupling") {
        const Matrix u = effective_unitary({1.0, 0.0, 0.0}, 3, 3).matrix();
        CHECK(max_abs(u - Matrix::Identity(16, 16)) == 0.0);
    }
    SUBCASE("explicit two-photon two-atom matrix") {
        // exp(-i e^2 sx m^2) with sx, m in {1, 0, -1}, photon-major
        const double e2 = 0.05 * 0.05;
        const Complex a = std::polar(1.0, -e2);
        const Complex b = std::polar(1.0, e2);
        const std::vector<Complex> diag{a, 1.0, a, 1.0, 1.0, 1.0, b, 1.0, b};
        Matrix expected = Matrix::Zero(9, 9);
        for (int k = 0; k < 9; ++k) expected(k, k) = diag[k];
        const Matrix u = effective_unitary({1.0, 0.05, 0.0}, 2, 2).matrix();
        CHECK(max_abs(u - expected) < 1e-15);
    }
    SUBCASE("max-Sx photon block is one-axis twisting with 4 chi tau") {
        const SqueezeParams p = SqueezeParams::from_coupling(1.0, 0.02, 6);
        const Matrix block = effective_unitary(p, 6, 5).matrix().topLeftCorner(6, 6);
        const spin::CollectiveOps ops = spin::build_collective_ops(5);
        const Matrix oat = spin::propagator(ops.jz2, 4.0 * p.chi * p.tau);
        CHECK(max_abs(block - oat) < 1e-14);
    }
}

TEST_CASE("global phase alignment") {
    const Matrix u = effective_unitary({1.0, 0.1, 0.0}, 2, 2).matrix();
    const Matrix rotated = std::polar(1.0, 0.7) * u;
    CHECK(max_abs(align_global_phase(rotated, u) - u) < 1e-14);
    CHECK_THROWS_AS(align_global_phase(u, Matrix::Identity(3, 3)), ContractError);
    CHECK(operator_norm(2.0 * Matrix::Identity(4, 4)) == doctest::Approx(2.0));
}

TEST_CASE("BCH remainder is cubic in g tau") {
    const std::vector<double> gts{1e-3, 2e-3, 5e-3, 1e-2};
    std::vector<double> err;
    for (double gt : gts) err.push_back(bch_error({1.0, gt, 0.0}, 4, 4));
    for (std::size_t i = 0; i < gts.size(); ++i) {
        const double half = bch_error({1.0, gts[i] / 2, 0.0}, 4, 4);
        CAPTURE(gts[i]);
        CHECK(std::abs(half / err[i] / 0.125 - 1.0) < 0.25);
    }
    // least-squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < gts.size(); ++i) {
        const double x = std::log(gts[i]), y = std::log(err[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double n = static_cast<double>(gts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope - 3.0) < 0.3);

    CHECK(bch_error({1.0, 1e-2, 0.0}, 2, 2) < 1e-4);
}

TEST_CASE("induced atomic map approaches one-axis twisting") {
    double previous = 0.0;
    for (double gt : {1e-2, 5e-3, 2.5e-3}) {
        const SqueezeParams p = SqueezeParams::from_coupling(1.0, gt, 4);
        const double err = oat_map_error(p, 4, 4);
        CHECK(err < 10.0 * gt * gt * gt);
        if (previous > 0.0) CHECK(err < previous / 4.0);
        previous = err;
        CHECK(induced_atomic_map(p, 4, 4).rows() == 5);
    }
}

TEST_CASE("dense size limits") {
    CHECK_THROWS_AS(u4_sequence({1.0, 1e-3, 0.0}, 200, 100), ConfigError);
    CHECK_THROWS_AS(effective_unitary({1.0, 1e-3, 0.0}, 2, 0), ConfigError);
}

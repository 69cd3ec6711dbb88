#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "lindblad/errors.hpp"
#include "lindblad/models.hpp"
#include "lindblad/oracle.hpp"

using namespace lindblad;
using namespace std::complex_literals;

namespace {

Eigen::MatrixXcd random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m(r, c) = std::complex<double>(uni(rng), uni(rng));
    return 0.5 * (m + m.adjoint().eval());
}

// Direct evaluation of the master equation from full-space matrices. This is
// a second, independent route used only to pin the oracle down.
Eigen::MatrixXcd apply_master_equation(const BlockModel& model,
                                       const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXcd h = model.hamiltonian.to_full(model.basis);
    Eigen::MatrixXcd out = -1.0i * (h * rho - rho * h);
    auto add = [&](const LindbladChannel& ch) {
        const Eigen::MatrixXcd op = ch.op.to_full(model.basis);
        const Eigen::MatrixXcd opd_op = op.adjoint() * op;
        out += 0.5 * ch.rate *
               (2.0 * op * rho * op.adjoint() - opd_op * rho - rho * opd_op);
    };
    for (const auto& ch : model.loss)
        add(ch);
    for (const auto& ch : model.dephasing)
        add(ch);
    return out;
}

} // namespace

TEST_CASE("row-major vectorization order") {
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const Eigen::VectorXcd v = vec_rowmajor(m);
    CHECK(v(0) == 1.0 + 0.0i);
    CHECK(v(1) == 2.0 + 0.0i);
    CHECK(v(2) == 3.0 + 0.0i);
    CHECK(v(3) == 4.0 + 0.0i);
    CHECK((unvec_rowmajor(v, 2, 2) - m).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXcd rect(2, 3);
    rect << 1, 2, 3, 4, 5, 6;
    CHECK((unvec_rowmajor(vec_rowmajor(rect), 2, 3) - rect).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("dense Liouvillian applies the master equation") {
    for (const auto& model :
         {build_jc(1.0, 0.3, 0.5, 0.2, 2),
          build_jc_dephasing(1.0, 0.3, 0.5, 0.2, 0.15, 2),
          build_tc2(1.0, 1.3, 0.2, -0.4, 0.3, 0.45, 0.6, 2)}) {
        const auto sop = dense_liouvillian(model);
        const int total = model.basis.total_dimension();
        REQUIRE(sop.matrix.rows() == total * total);

        const Eigen::MatrixXcd rho = random_hermitian(total, 1234);
        const Eigen::MatrixXcd via_sop =
            unvec_rowmajor(sop.matrix * vec_rowmajor(rho), total, total);
        const Eigen::MatrixXcd direct = apply_master_equation(model, rho);

        CHECK((via_sop - direct).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((via_sop - via_sop.adjoint().eval()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(std::abs(via_sop.trace()) <= 1e-12);
    }
}

TEST_CASE("propagation preserves state properties") {
    const auto model = build_jc(1.0, 0.3, 0.5, 0.2, 2);
    const auto sop = dense_liouvillian(model);
    const int total = model.basis.total_dimension();

    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(total, total);
    rho0(model.basis.state_index(1, 2), model.basis.state_index(1, 2)) = 1.0;

    CHECK((dense_propagate(sop, rho0, 0.0) - rho0).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK_THROWS_AS(dense_propagate(sop, rho0, -1.0), std::invalid_argument);

    for (double t : {0.3, 1.1, 4.0}) {
        const Eigen::MatrixXcd rho = dense_propagate(sop, rho0, t);
        CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
        CHECK((rho - rho.adjoint().eval()).cwiseAbs().maxCoeff() <= 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    }
}

TEST_CASE("eigenpair residuals are sharp") {
    const auto model = build_jc(1.0, 0.3, 0.5, 0.2, 2);
    const auto sop = dense_liouvillian(model);
    const auto dense = dense_eigensystem(sop);
    const int total = model.basis.total_dimension();

    for (int i = 0; i < 5; ++i) {
        const std::complex<double> lambda = dense.eigenvalues(i);
        const Eigen::MatrixXcd rho =
            unvec_rowmajor(dense.eigenvectors.col(i), total, total);
        CHECK(eigenpair_residual(sop, lambda, rho, EigenSide::right) <= 1e-12);

        // A small perturbation must be clearly visible in the residual.
        Eigen::MatrixXcd off = rho;
        off(0, 1) += 1e-3 * (1.0 + rho.cwiseAbs().maxCoeff());
        CHECK(eigenpair_residual(sop, lambda, off, EigenSide::right) > 1e-5);
    }
}

TEST_CASE("left residuals use the adjoint superoperator") {
    const auto model = build_jc(1.0, 0.3, 0.5, 0.2, 2);
    const auto sop = dense_liouvillian(model);
    const int total = model.basis.total_dimension();

    // The identity is always a left eigenvector at lambda = 0.
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(total, total);
    CHECK(eigenpair_residual(sop, 0.0, identity, EigenSide::left) <= 1e-13);
    CHECK(eigenpair_residual(sop, 0.0, identity, EigenSide::right) > 1e-3);
}

TEST_CASE("size guard refuses large dense problems") {
    SpinSystem sys;
    sys.num_spins = 7;
    sys.delta.assign(7, 0.1);
    sys.J = Eigen::MatrixXd::Zero(7, 7);
    sys.eta = Eigen::MatrixXd::Zero(7, 7);
    sys.gamma.assign(7, 0.2);

    const auto model = build_spin_model(sys);
    CHECK(model.basis.total_dimension() == 128);
    try {
        dense_liouvillian(model);
        FAIL("expected SizeGuardError");
    } catch (const SizeGuardError& err) {
        CHECK(err.dimension == 128);
        CHECK(err.limit == 64);
    }
}

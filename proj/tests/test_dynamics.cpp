#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "lindblad/dynamics.hpp"
#include "lindblad/errors.hpp"
#include "lindblad/models.hpp"
#include "lindblad/oracle.hpp"

using Catch::Matchers::WithinAbs;
using namespace lindblad;
using namespace std::complex_literals;

namespace {

Eigen::MatrixXcd projector(const BlockModel& model, int n, int j) {
    const int total = model.basis.total_dimension();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(total, total);
    const int idx = model.basis.state_index(n, j);
    rho(idx, idx) = 1.0;
    return rho;
}

Eigen::MatrixXcd mixed_state(const BlockModel& model) {
    const int total = model.basis.total_dimension();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(total);
    psi(model.basis.state_index(0, 1)) = 1.0;
    psi(model.basis.state_index(1, 1)) = 1.0i;
    psi(model.basis.state_index(1, 2)) = 0.5;
    psi.normalize();
    return psi * psi.adjoint();
}

} // namespace

TEST_CASE("expansion reproduces the state and weights the steady state") {
    const auto model = build_jc(1.0, 0.3, 0.5, 0.2, 2);
    const auto eig = full_eigensystem(model);

    const Eigen::MatrixXcd rho0 = mixed_state(model);
    const Eigen::VectorXcd coeffs = expand_state(eig, rho0);

    Eigen::MatrixXcd rebuilt =
        Eigen::MatrixXcd::Zero(rho0.rows(), rho0.cols());
    int idx = 0;
    eig.for_each_eigenvalue(
        [&](std::complex<double>, const LiouvilleEigenpair& p, bool is_adjoint) {
            rebuilt += coeffs(idx++) * (is_adjoint ? Eigen::MatrixXcd(p.right.adjoint())
                                                   : p.right);
        });
    REQUIRE(idx == coeffs.size());
    CHECK((rebuilt - rho0).cwiseAbs().maxCoeff() <= 1e-12);

    // The steady-state coefficient is the trace of rho0, exactly one.
    const Eigen::VectorXcd on_steady = expand_state(eig, eig.steady_state());
    idx = 0;
    eig.for_each_eigenvalue(
        [&](std::complex<double> lambda, const LiouvilleEigenpair&, bool) {
            if (std::abs(lambda) < 1e-12)
                CHECK(std::abs(on_steady(idx) - 1.0) <= 1e-10);
            else
                CHECK(std::abs(on_steady(idx)) <= 1e-10);
            ++idx;
        });
}

TEST_CASE("expansion rejects invalid states") {
    const auto model = build_jc(1.0, 0.3, 0.5, 0.2, 2);
    const auto eig = full_eigensystem(model);
    const int total = model.basis.total_dimension();

    Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(total, total);
    skew(0, 0) = 1.0;
    skew(0, 1) = 0.3;
    CHECK_THROWS_AS(expand_state(eig, skew), std::invalid_argument);

    CHECK_THROWS_AS(expand_state(eig, 2.0 * projector(model, 0, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(expand_state(eig, Eigen::MatrixXcd::Identity(3, 3)),
                    std::invalid_argument);
}

TEST_CASE("spectral evolution matches the dense propagator") {
    for (const auto& model :
         {build_jc(1.0, 0.3, 0.5, 0.2, 2),
          build_jc_dephasing(1.0, 0.3, 0.5, 0.2, 0.15, 2)}) {
        const auto eig = full_eigensystem(model);
        const auto sop = dense_liouvillian(model);
        const Eigen::MatrixXcd rho0 = mixed_state(model);

        CHECK((evolve(eig, rho0, 0.0) - rho0).cwiseAbs().maxCoeff() <= 1e-12);
        for (double t : {0.1, 0.7, 1.9, 6.0}) {
            const Eigen::MatrixXcd spectral = evolve(eig, rho0, t);
            const Eigen::MatrixXcd dense = dense_propagate(sop, rho0, t);
            CHECK(trace_distance(spectral, dense) <= 1e-10);
            CHECK(std::abs(spectral.trace() - 1.0) <= 1e-12);
        }

        CHECK_THROWS_AS(evolve(eig, rho0, -0.1), std::invalid_argument);
    }
}

TEST_CASE("long-time evolution reaches the steady state") {
    const auto model = build_jc(1.0, 0.3, 0.5, 0.2, 2);
    const auto eig = full_eigensystem(model);
    const Eigen::MatrixXcd late = evolve(eig, projector(model, 1, 2), 200.0);
    CHECK(trace_distance(late, eig.steady_state()) <= 1e-10);
}

TEST_CASE("two-time correlation obeys quantum regression") {
    const auto model = build_jc(1.0, 0.3, 0.5, 0.2, 2);
    const auto eig = full_eigensystem(model);
    const auto sop = dense_liouvillian(model);

    const Eigen::MatrixXcd rho0 = projector(model, 1, 2);
    const Eigen::MatrixXcd minus =
        model.named_operator("sigma_minus").to_full(model.basis);
    const Eigen::MatrixXcd plus = minus.adjoint();

    const std::vector<double> times{0.0, 0.4, 0.9, 1.7, 2.6};
    for (double t : times) {
        for (double tp : times) {
            const std::complex<double> got =
                two_time_correlation(eig, rho0, plus, minus, t, tp);

            std::complex<double> want;
            if (tp >= t) {
                const Eigen::MatrixXcd seeded =
                    dense_propagate(sop, rho0, t) * plus;
                want = (minus * dense_propagate(sop, seeded, tp - t)).trace();
            } else {
                const Eigen::MatrixXcd seeded =
                    dense_propagate(sop, rho0, tp) * plus;
                want = std::conj(
                    (minus * dense_propagate(sop, seeded, t - tp)).trace());
            }
            CHECK(std::abs(got - want) <= 1e-9);
        }
    }

    // Equal times give the excited-state population.
    const std::complex<double> equal =
        two_time_correlation(eig, rho0, plus, minus, 1.3, 1.3);
    const std::complex<double> population =
        (plus * minus * evolve(eig, rho0, 1.3)).trace();
    CHECK(std::abs(equal - population) <= 1e-10);
}

TEST_CASE("reversed time order requires an adjoint pair") {
    const auto model = build_jc(1.0, 0.3, 0.5, 0.2, 2);
    const auto eig = full_eigensystem(model);
    const Eigen::MatrixXcd rho0 = projector(model, 1, 2);
    const Eigen::MatrixXcd minus =
        model.named_operator("sigma_minus").to_full(model.basis);
    const Eigen::MatrixXcd a = model.named_operator("a").to_full(model.basis);

    CHECK_NOTHROW(two_time_correlation(eig, rho0, a.adjoint(), minus, 0.2, 0.8));
    CHECK_THROWS_AS(two_time_correlation(eig, rho0, a.adjoint(), minus, 0.8, 0.2),
                    std::invalid_argument);
}

TEST_CASE("closed-form spectrum values") {
    CHECK_THAT(jc_spectrum_closed_form(0.0, 1.0, 0.0, 1.0, 1.0),
               WithinAbs(0.16, 1e-15));
    CHECK_THAT(jc_varsigma_closed_form(1.0, 0.0, 1.0, 1.0), WithinAbs(0.6, 1e-15));
}

TEST_CASE("emission spectrum matches the closed form") {
    const double g = 1.0, delta = 0.3, kappa = 0.5, gamma = 0.2;
    const auto model = build_jc(g, delta, kappa, gamma, 3);
    const auto eig = full_eigensystem(model);
    const Eigen::MatrixXcd rho0 = projector(model, 1, 2);
    const Eigen::VectorXd omega = Eigen::VectorXd::LinSpaced(41, -4.0, 4.0);

    const auto result = emission_spectrum(eig, rho0, omega,
                                          model.named_operator("sigma_minus"));
    REQUIRE(result.omega.size() == 41);

    for (int i = 0; i < omega.size(); ++i) {
        const double closed =
            jc_spectrum_closed_form(omega(i), g, delta, kappa, gamma);
        CHECK(std::abs(result.s(i) - closed) <= 1e-8 + 1e-6 * closed);
        CHECK_THAT(result.S(i),
                   WithinAbs(result.s(i) / (2.0 * std::numbers::pi * result.varsigma),
                             1e-12));
    }
    CHECK(std::abs(result.varsigma -
                   jc_varsigma_closed_form(g, delta, kappa, gamma)) <= 1e-9);

    // Surviving weights pair the four (0,1) eigenvalues with the two (1,0)
    // ones; all six decay.
    CHECK_FALSE(result.weights.empty());
    for (const auto& term : result.weights) {
        CHECK(term.lambda_a.real() < -1e-6);
        CHECK(term.lambda_b.real() < -1e-6);
    }
}

TEST_CASE("spectrum rejects probes of the wrong kind") {
    const auto model = build_jc(1.0, 0.3, 0.5, 0.2, 2);
    const auto eig = full_eigensystem(model);
    const Eigen::VectorXd omega = Eigen::VectorXd::LinSpaced(3, -1.0, 1.0);
    CHECK_THROWS_AS(emission_spectrum(eig, projector(model, 1, 2), omega,
                                      model.named_operator("sigma_z")),
                    std::invalid_argument);
}

TEST_CASE("non-decaying weight-carrying eigenvalues are refused") {
    // Hand-built eigensystem of a two-level emitter whose population mode
    // does not decay: lambda = 0 carries a nonzero spectrum weight.
    GradedBasis basis({1, 1});
    Eigen::MatrixXcd ground(2, 2), excited(2, 2), lower(2, 2);
    ground << 1, 0, 0, 0;
    excited << 0, 0, 0, 1;
    lower << 0, 1, 0, 0; // |0,1><1,1|

    LiouvilleEigenpair steady;
    steady.l = 0;
    steady.m = 0;
    steady.mu = 1;
    steady.lambda = 0.0;
    steady.right = ground;
    steady.left = Eigen::MatrixXcd::Identity(2, 2);

    LiouvilleEigenpair population;
    population.l = 0;
    population.m = 1;
    population.mu = 1;
    population.lambda = 0.0; // non-decaying on purpose
    population.right = excited - ground;
    population.left = excited;

    LiouvilleEigenpair coherence;
    coherence.l = 1;
    coherence.m = 0;
    coherence.mu = 1;
    coherence.lambda = -0.5;
    coherence.right = lower.adjoint();
    coherence.left = lower.adjoint();

    const LiouvilleEigensystem eig(basis, {}, {steady, population, coherence}, false);
    REQUIRE(eig.total_count() == 4);

    const BlockOperator probe(OperatorKind::lowering, {Eigen::MatrixXcd::Ones(1, 1)});
    const Eigen::VectorXd omega = Eigen::VectorXd::LinSpaced(3, -1.0, 1.0);

    try {
        emission_spectrum(eig, excited, omega, probe);
        FAIL("expected DivergentSpectrumError");
    } catch (const DivergentSpectrumError& err) {
        CHECK(std::abs(err.lambda) <= 1e-12);
    }
}

TEST_CASE("trace distance basics") {
    Eigen::MatrixXcd a(2, 2), b(2, 2);
    a << 1, 0, 0, 0;
    b << 0.5, 0, 0, 0.5;
    CHECK_THAT(trace_distance(a, b), WithinAbs(0.5, 1e-14));
    CHECK_THAT(trace_distance(a, a), WithinAbs(0.0, 1e-14));
    CHECK_THAT(trace_distance(b, a), WithinAbs(0.5, 1e-14));
}

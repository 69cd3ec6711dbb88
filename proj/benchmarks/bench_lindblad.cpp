#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <complex>
#include <memory>

#include "lindblad/dynamics.hpp"
#include "lindblad/models.hpp"
#include "lindblad/oracle.hpp"
#include "lindblad/spectral_solver.hpp"

namespace {

constexpr double kG = 1.0;
constexpr double kDelta = 0.3;
constexpr double kKappa = 0.5;
constexpr double kGamma = 0.2;

lindblad::BlockModel jc_model(int n_max) {
    return lindblad::build_jc(kG, kDelta, kKappa, kGamma, n_max);
}

Eigen::MatrixXcd excited_atom(const lindblad::GradedBasis& basis) {
    const int dim = basis.total_dimension();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    const int idx = basis.state_index(1, 2);
    rho(idx, idx) = 1.0;
    return rho;
}

// Block-recursive eigensystem of the Jaynes-Cummings Liouvillian. The pair
// blocks stay at most 4x4, so the cutoff range can go far beyond what the
// dense decomposition below can reach.
void BM_BlockEigensystem(benchmark::State& state) {
    const auto model = jc_model(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto eig = lindblad::full_eigensystem(model);
        benchmark::DoNotOptimize(eig);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BlockEigensystem)
    ->RangeMultiplier(2)
    ->Range(2, 64)
    ->Unit(benchmark::kMicrosecond)
    ->Complexity();

// Brute-force eigendecomposition of the same Liouvillian as one dense
// (2n+1)^2 x (2n+1)^2 matrix. The size guard caps the Hilbert space at 64
// states, so the range stops at cutoff 16.
void BM_DenseEigensystem(benchmark::State& state) {
    const auto model = jc_model(static_cast<int>(state.range(0)));
    const auto sop = lindblad::dense_liouvillian(model);
    for (auto _ : state) {
        auto eig = lindblad::dense_eigensystem(sop);
        benchmark::DoNotOptimize(eig);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseEigensystem)
    ->RangeMultiplier(2)
    ->Range(2, 16)
    ->Unit(benchmark::kMillisecond)
    ->Complexity();

// Emission spectrum on a solved eigensystem, swept over the number of
// frequency points. The double eigenvalue sum is collapsed into weights
// once, so the per-point cost is a pass over the surviving terms.
class SpectrumFixture : public benchmark::Fixture {
public:
    void SetUp(const benchmark::State&) override {
        if (eig)
            return;
        model = std::make_unique<lindblad::BlockModel>(jc_model(8));
        eig = std::make_unique<lindblad::LiouvilleEigensystem>(
            lindblad::full_eigensystem(*model));
        rho0 = excited_atom(eig->basis());
    }

    std::unique_ptr<lindblad::BlockModel> model;
    std::unique_ptr<lindblad::LiouvilleEigensystem> eig;
    Eigen::MatrixXcd rho0;
};

BENCHMARK_DEFINE_F(SpectrumFixture, BM_EmissionSpectrum)(benchmark::State& state) {
    const auto points = static_cast<int>(state.range(0));
    const Eigen::VectorXd omega = Eigen::VectorXd::LinSpaced(points, -5.0, 5.0);
    const auto& probe = model->named_operator("sigma_minus");
    for (auto _ : state) {
        auto result = lindblad::emission_spectrum(*eig, rho0, omega, probe);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK_REGISTER_F(SpectrumFixture, BM_EmissionSpectrum)
    ->RangeMultiplier(4)
    ->Range(16, 4096)
    ->Unit(benchmark::kMicrosecond);

// Single time-evolution step rho(t) from the spectral expansion, swept over
// the cutoff. Cost is one pass over all eigenpairs with dense accumulation.
void BM_Evolve(benchmark::State& state) {
    const auto model = jc_model(static_cast<int>(state.range(0)));
    const auto eig = lindblad::full_eigensystem(model);
    const Eigen::MatrixXcd rho0 = excited_atom(eig.basis());
    for (auto _ : state) {
        auto rho = lindblad::evolve(eig, rho0, 1.7);
        benchmark::DoNotOptimize(rho);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evolve)
    ->RangeMultiplier(2)
    ->Range(2, 32)
    ->Unit(benchmark::kMicrosecond)
    ->Complexity();

} // namespace

BENCHMARK_MAIN();

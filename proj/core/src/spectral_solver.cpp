#include "lindblad/spectral_solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "lindblad/errors.hpp"

namespace lindblad {

namespace {

// Diagonal of the resolvent-style divisor 1/(lambda_ref - lambda_nu) with a
// resonance guard.
Eigen::VectorXcd gap_inverse(const Eigen::VectorXcd& lambdas, std::complex<double> ref,
                             double resonance_tol, int l, int m, int mu, int n) {
    const double threshold = resonance_tol * (1.0 + std::abs(ref));
    Eigen::VectorXcd out(lambdas.size());
    for (int nu = 0; nu < lambdas.size(); ++nu) {
        const std::complex<double> gap = ref - lambdas(nu);
        if (std::abs(gap) < threshold)
            throw ResonanceError(l, m, mu, n, nu + 1, ref, lambdas(nu));
        out(nu) = 1.0 / gap;
    }
    return out;
}

} // namespace

std::vector<Eigen::VectorXcd> right_chain(const SectorEigensystem& sec, int l, int m,
                                          int mu, double resonance_tol) {
    const auto& lambdas = sec.lambda[l];
    if (m < 0 || m >= static_cast<int>(lambdas.size()))
        throw std::invalid_argument("right_chain: m out of range");
    const int dim_m = static_cast<int>(lambdas[m].size());
    if (mu < 1 || mu > dim_m)
        throw std::invalid_argument("right_chain: mu out of range");
    const std::complex<double> ref = lambdas[m](mu - 1);

    std::vector<Eigen::VectorXcd> chain(m + 1);
    chain[m] = Eigen::VectorXcd::Zero(dim_m);
    chain[m](mu - 1) = 1.0;
    for (int n = m - 1; n >= 0; --n) {
        const Eigen::VectorXcd fed = sec.jump[l][n + 1] * chain[n + 1];
        chain[n] = gap_inverse(lambdas[n], ref, resonance_tol, l, m, mu, n)
                       .cwiseProduct(fed);
    }
    return chain;
}

std::vector<Eigen::VectorXcd> left_chain(const SectorEigensystem& sec, int l, int m,
                                         int mu, double resonance_tol) {
    const auto& lambdas = sec.lambda[l];
    if (m < 0 || m >= static_cast<int>(lambdas.size()))
        throw std::invalid_argument("left_chain: m out of range");
    const int dim_m = static_cast<int>(lambdas[m].size());
    if (mu < 1 || mu > dim_m)
        throw std::invalid_argument("left_chain: mu out of range");
    const std::complex<double> ref = lambdas[m](mu - 1);
    const int n_top = static_cast<int>(lambdas.size()) - 1;

    std::vector<Eigen::VectorXcd> chain(n_top - m + 1);
    chain[0] = Eigen::VectorXcd::Zero(dim_m);
    chain[0](mu - 1) = 1.0;
    for (int n = m + 1; n <= n_top; ++n) {
        const Eigen::VectorXcd fed = sec.jump[l][n].adjoint() * chain[n - 1 - m];
        chain[n - m] = gap_inverse(lambdas[n], ref, resonance_tol, l, m, mu, n)
                           .conjugate()
                           .cwiseProduct(fed);
    }
    return chain;
}

namespace {

Eigen::MatrixXcd assemble(const GradedBasis& basis, const SectorEigensystem& sec, int l,
                          int n_first, const std::vector<Eigen::VectorXcd>& chain,
                          bool left_side) {
    const int total = basis.total_dimension();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(total, total);
    for (std::size_t idx = 0; idx < chain.size(); ++idx) {
        const int n = n_first + static_cast<int>(idx);
        const Eigen::VectorXcd flat = left_side ? (sec.left[l][n] * chain[idx]).eval()
                                                : (sec.right[l][n] * chain[idx]).eval();
        const int rows = basis.block_dim(n + l);
        const int cols = basis.block_dim(n);
        for (int j = 0; j < rows; ++j)
            for (int k = 0; k < cols; ++k)
                out(basis.block_offset(n + l) + j, basis.block_offset(n) + k) =
                    flat(j * cols + k);
    }
    return out;
}

} // namespace

Eigen::MatrixXcd assemble_right(const GradedBasis& basis, const SectorEigensystem& sec,
                                int l, const std::vector<Eigen::VectorXcd>& chain) {
    return assemble(basis, sec, l, 0, chain, false);
}

Eigen::MatrixXcd assemble_left(const GradedBasis& basis, const SectorEigensystem& sec,
                               int l, int m, const std::vector<Eigen::VectorXcd>& chain) {
    return assemble(basis, sec, l, m, chain, true);
}

namespace {

std::pair<SectorEigensystem, std::vector<BlockEigensystem>> decompose_sectors(
    const BlockModel& model, const SolverOptions& opts) {
    model.validate();
    std::vector<BlockEigensystem> kblocks;
    if (!model.has_dephasing()) {
        const BlockOperator K = build_effective_hamiltonian(model);
        kblocks = diagonalize_effective_blocks(K, opts.degeneracy_tol);
    }
    SectorEigensystem sec = build_sector_eigensystem(model, kblocks, opts.degeneracy_tol);
    return {std::move(sec), std::move(kblocks)};
}

} // namespace

std::vector<EigenvalueRecord> liouville_eigenvalues(const BlockModel& model,
                                                    const SolverOptions& opts) {
    auto [sec, kblocks] = decompose_sectors(model, opts);
    std::vector<EigenvalueRecord> out;
    const int N = model.basis.max_excitation();
    for (int l = 0; l <= N; ++l)
        for (int m = 0; m <= N - l; ++m) {
            const int dim_m = static_cast<int>(sec.lambda[l][m].size());
            for (int mu = 1; mu <= dim_m; ++mu)
                out.push_back({l, m, mu, sec.lambda[l][m](mu - 1)});
        }
    return out;
}

LiouvilleEigensystem full_eigensystem(const BlockModel& model, const SolverOptions& opts) {
    auto [sec, kblocks] = decompose_sectors(model, opts);
    const int N = model.basis.max_excitation();

    std::vector<LiouvilleEigenpair> pairs;
    for (int l = 0; l <= N; ++l) {
        // Descending m reuses the freshest lambda lists of the sector.
        for (int m = N - l; m >= 0; --m) {
            const int dim_m = static_cast<int>(sec.lambda[l][m].size());
            for (int mu = 1; mu <= dim_m; ++mu) {
                LiouvilleEigenpair p;
                p.l = l;
                p.m = m;
                p.mu = mu;
                p.lambda = sec.lambda[l][m](mu - 1);
                p.right_chain = right_chain(sec, l, m, mu, opts.resonance_tol);
                p.left_chain = left_chain(sec, l, m, mu, opts.resonance_tol);
                p.right = assemble_right(model.basis, sec, l, p.right_chain);
                p.left = assemble_left(model.basis, sec, l, m, p.left_chain);
                pairs.push_back(std::move(p));
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return std::tie(a.l, a.m, a.mu) < std::tie(b.l, b.m, b.mu);
    });
    return LiouvilleEigensystem(model.basis, std::move(kblocks), std::move(pairs),
                                model.has_dephasing());
}

LiouvilleEigensystem::LiouvilleEigensystem(GradedBasis basis,
                                           std::vector<BlockEigensystem> kblocks,
                                           std::vector<LiouvilleEigenpair> pairs,
                                           bool used_dephasing_path)
    : basis_(std::move(basis)),
      kblocks_(std::move(kblocks)),
      pairs_(std::move(pairs)),
      used_dephasing_path_(used_dephasing_path) {}

int LiouvilleEigensystem::total_count() const {
    int count = 0;
    for (const auto& p : pairs_)
        count += p.l > 0 ? 2 : 1;
    return count;
}

const LiouvilleEigenpair& LiouvilleEigensystem::pair(int l, int m, int mu) const {
    for (const auto& p : pairs_)
        if (p.l == l && p.m == m && p.mu == mu)
            return p;
    throw std::out_of_range("LiouvilleEigensystem::pair: no such eigenpair");
}

const Eigen::MatrixXcd& LiouvilleEigensystem::steady_state() const {
    if (basis_.block_dim(0) != 1)
        throw std::logic_error("steady_state: lowest block is not one dimensional");
    return pair(0, 0, 1).right;
}

} // namespace lindblad

#include "lindblad/block_eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "lindblad/errors.hpp"

namespace lindblad {

namespace {

using std::complex;

double degeneracy_threshold(const Eigen::MatrixXcd& block, double rel_tol) {
    return rel_tol * std::max(1.0, block.cwiseAbs().maxCoeff());
}

void check_separation(const Eigen::VectorXcd& eps, double threshold,
                      const std::string& label) {
    for (int i = 0; i < eps.size(); ++i)
        for (int j = i + 1; j < eps.size(); ++j)
            if (std::abs(eps(i) - eps(j)) < threshold)
                throw DegenerateBlockError(label, i + 1, j + 1, eps(i), eps(j));
}

} // namespace

BlockOperator build_effective_hamiltonian(const BlockModel& model) {
    model.validate();
    const int N = model.basis.max_excitation();
    std::vector<Eigen::MatrixXcd> blocks(N + 1);
    const complex<double> half_i(0.0, 0.5);
    for (int n = 0; n <= N; ++n) {
        Eigen::MatrixXcd k = model.hamiltonian.block(n);
        for (const auto& ch : model.loss) {
            if (n == 0)
                continue; // lowering operators annihilate the lowest block
            const auto& a = ch.op.block(n);
            k -= half_i * ch.rate * (a.adjoint() * a);
        }
        blocks[n] = k;
    }
    return BlockOperator(OperatorKind::conserving, std::move(blocks));
}

BlockEigensystem diagonalize_block(const Eigen::MatrixXcd& block, double rel_tol,
                                   const std::string& label) {
    const int d = static_cast<int>(block.rows());
    if (d == 0 || block.cols() != d)
        throw std::invalid_argument("diagonalize_block: block must be square");
    if (!block.allFinite())
        throw std::invalid_argument("diagonalize_block: non-finite entries");

    BlockEigensystem out;
    if (d == 1) {
        out.eigenvalues = Eigen::VectorXcd::Constant(1, block(0, 0));
        out.right = Eigen::MatrixXcd::Identity(1, 1);
        out.left = Eigen::MatrixXcd::Identity(1, 1);
        return out;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(block);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize_block: eigensolver failed for " + label);

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    const auto& raw = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (raw(a).real() != raw(b).real())
            return raw(a).real() < raw(b).real();
        return raw(a).imag() < raw(b).imag();
    });

    out.eigenvalues.resize(d);
    out.right.resize(d, d);
    for (int j = 0; j < d; ++j) {
        out.eigenvalues(j) = raw(order[j]);
        out.right.col(j) = solver.eigenvectors().col(order[j]).normalized();
    }

    check_separation(out.eigenvalues, degeneracy_threshold(block, rel_tol), label);

    // Left eigenvectors are the eigenvectors of the adjoint; q_j belongs to
    // the adjoint eigenvalue conj(eps_j).
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> adjoint_solver(block.adjoint());
    if (adjoint_solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize_block: adjoint eigensolver failed for " + label);

    const auto& mu = adjoint_solver.eigenvalues();
    std::vector below(d, false);
    out.left.resize(d, d);
    for (int j = 0; j < d; ++j) {
        int best = -1;
        double best_dist = 0.0;
        for (int i = 0; i < d; ++i) {
            if (below[i])
                continue;
            const double dist = std::abs(std::conj(mu(i)) - out.eigenvalues(j));
            if (best < 0 || dist < best_dist) {
                best = i;
                best_dist = dist;
            }
        }
        below[best] = true;
        const Eigen::VectorXcd q = adjoint_solver.eigenvectors().col(best);
        const complex<double> overlap = q.dot(out.right.col(j));
        if (std::abs(overlap) < 1e-14)
            throw std::runtime_error("diagonalize_block: singular eigenvector pairing in " +
                                     label);
        out.left.col(j) = q / std::conj(overlap);
    }

    const double pairing_error =
        (out.left.adjoint() * out.right - Eigen::MatrixXcd::Identity(d, d))
            .cwiseAbs()
            .maxCoeff();
    if (pairing_error > 1e-8)
        throw std::runtime_error("diagonalize_block: biorthonormalization failed for " +
                                 label);
    return out;
}

std::vector<BlockEigensystem> diagonalize_effective_blocks(const BlockOperator& K,
                                                           double rel_tol) {
    std::vector<BlockEigensystem> out;
    out.reserve(K.num_blocks());
    for (int n = 0; n < K.num_blocks(); ++n)
        out.push_back(diagonalize_block(K.block(n), rel_tol, "K(" + std::to_string(n) + ")"));
    return out;
}

BlockEigensystem jc_analytic_block(int n, double g, double delta, double kappa,
                                   double gamma, double rel_tol) {
    if (n < 1)
        throw std::invalid_argument("jc_analytic_block: n must be >= 1");
    const complex<double> i(0.0, 1.0);
    const double gn = g * std::sqrt(static_cast<double>(n));
    const complex<double> base = (2.0 * delta - i * ((2.0 * n - 1.0) * kappa + gamma)) / 4.0;
    const complex<double> w = (2.0 * delta + i * (kappa - gamma)) / 4.0;
    const complex<double> root = std::sqrt(complex<double>(gn * gn, 0.0) + w * w);

    BlockEigensystem out;
    out.eigenvalues.resize(2);
    out.eigenvalues << base - root, base + root;

    const complex<double> k11 = -i * (0.5 * n * kappa);
    const complex<double> k22 = delta - i * 0.5 * ((n - 1.0) * kappa + gamma);
    const double scale = std::max({1.0, std::abs(k11), std::abs(k22), std::abs(gn)});
    if (std::abs(out.eigenvalues(0) - out.eigenvalues(1)) < rel_tol * scale)
        throw DegenerateBlockError("K(" + std::to_string(n) + ") analytic", 1, 2,
                                   out.eigenvalues(0), out.eigenvalues(1));

    out.right.resize(2, 2);
    if (std::abs(gn) == 0.0) {
        // Decoupled block: the closed form for theta degenerates, but the
        // eigenvectors are just the basis vectors in one of two orders.
        if (std::abs(out.eigenvalues(0) - k11) <= std::abs(out.eigenvalues(0) - k22))
            out.right << 1.0, 0.0, 0.0, 1.0;
        else
            out.right << 0.0, -1.0, 1.0, 0.0;
    } else {
        const complex<double> theta =
            std::atan((2.0 * out.eigenvalues(0) + i * (n * kappa)) / (2.0 * gn));
        const complex<double> c = std::cos(theta);
        const complex<double> s = std::sin(theta);
        out.right << c, -s, s, c;
    }
    out.left = out.right.conjugate();
    return out;
}

} // namespace lindblad

#include "lindblad/superblocks.hpp"

#include <stdexcept>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

namespace lindblad {

namespace {

using Eigen::MatrixXcd;

void check_sector(const GradedBasis& basis, int l, int n, bool need_lower) {
    const int N = basis.max_excitation();
    if (l < 0 || n < 0 || n + l > N)
        throw std::out_of_range("superblock: sector (l,n) out of range");
    if (need_lower && n < 1)
        throw std::out_of_range("superblock: jump feed needs n >= 1");
}

MatrixXcd identity(int d) { return MatrixXcd::Identity(d, d); }

} // namespace

SuperBlock coherent_superblock(const BlockOperator& K, int l, int n) {
    const std::complex<double> i(0.0, 1.0);
    const MatrixXcd& upper = K.block(n + l);
    const MatrixXcd& lower = K.block(n);
    MatrixXcd m = -i * Eigen::kroneckerProduct(upper, identity(lower.rows())).eval() +
                  i * Eigen::kroneckerProduct(identity(upper.rows()), lower.conjugate()).eval();
    return {l, n, SuperBasisTag::original, std::move(m)};
}

SuperBlock dephasing_superblock(const BlockModel& model, int l, int n) {
    check_sector(model.basis, l, n, false);
    const int du = model.basis.block_dim(n + l);
    const int dl = model.basis.block_dim(n);
    MatrixXcd m = MatrixXcd::Zero(du * dl, du * dl);
    for (const auto& ch : model.dephasing) {
        const MatrixXcd& cu = ch.op.block(n + l);
        const MatrixXcd& cl = ch.op.block(n);
        const MatrixXcd ctc_u = cu.adjoint() * cu;
        const MatrixXcd ctc_l = cl.adjoint() * cl;
        m += (0.5 * ch.rate) *
             (2.0 * Eigen::kroneckerProduct(cu, cl.conjugate()).eval() -
              Eigen::kroneckerProduct(ctc_u, identity(dl)).eval() -
              Eigen::kroneckerProduct(identity(du), ctc_l.transpose()).eval());
    }
    return {l, n, SuperBasisTag::original, std::move(m)};
}

SuperBlock conserving_superblock(const BlockModel& model, const BlockOperator& K, int l,
                                 int n) {
    check_sector(model.basis, l, n, false);
    SuperBlock out = coherent_superblock(K, l, n);
    out.matrix += dephasing_superblock(model, l, n).matrix;
    return out;
}

SuperBlock jump_superblock(const BlockModel& model, int l, int n) {
    check_sector(model.basis, l, n, true);
    const int rows = model.basis.pair_dim(l, n - 1);
    const int cols = model.basis.pair_dim(l, n);
    MatrixXcd m = MatrixXcd::Zero(rows, cols);
    for (const auto& ch : model.loss) {
        const MatrixXcd& au = ch.op.block(n + l);
        const MatrixXcd& al = ch.op.block(n);
        m += ch.rate * Eigen::kroneckerProduct(au, al.conjugate()).eval();
    }
    return {l, n, SuperBasisTag::original, std::move(m)};
}

Eigen::MatrixXcd jump_eigenbasis_tensor(const BlockModel& model,
                                        const std::vector<BlockEigensystem>& kblocks,
                                        int l, int n) {
    check_sector(model.basis, l, n, true);
    if (model.has_dephasing())
        throw std::invalid_argument(
            "jump_eigenbasis_tensor: tensor route invalid with dephasing channels");
    const int rows = model.basis.pair_dim(l, n - 1);
    const int cols = model.basis.pair_dim(l, n);
    MatrixXcd m = MatrixXcd::Zero(rows, cols);
    for (const auto& ch : model.loss) {
        const MatrixXcd tu =
            kblocks[n + l - 1].left.adjoint() * ch.op.block(n + l) * kblocks[n + l].right;
        const MatrixXcd tl =
            kblocks[n - 1].left.adjoint() * ch.op.block(n) * kblocks[n].right;
        m += ch.rate * Eigen::kroneckerProduct(tu, tl.conjugate()).eval();
    }
    return m;
}

Eigen::MatrixXcd jump_eigenbasis_transformed(const BlockModel& model,
                                             const Eigen::MatrixXcd& left_prev,
                                             const Eigen::MatrixXcd& right_n, int l,
                                             int n) {
    return left_prev.adjoint() * jump_superblock(model, l, n).matrix * right_n;
}

SectorEigensystem build_sector_eigensystem(const BlockModel& model,
                                           const std::vector<BlockEigensystem>& kblocks,
                                           double rel_tol) {
    const int N = model.basis.max_excitation();
    const bool dephasing = model.has_dephasing();

    SectorEigensystem sec;
    sec.lambda.resize(N + 1);
    sec.right.resize(N + 1);
    sec.left.resize(N + 1);
    sec.jump.resize(N + 1);

    const BlockOperator K = build_effective_hamiltonian(model);
    const std::complex<double> i(0.0, 1.0);

    for (int l = 0; l <= N; ++l) {
        const int n_max = N - l;
        sec.lambda[l].resize(n_max + 1);
        sec.right[l].resize(n_max + 1);
        sec.left[l].resize(n_max + 1);
        sec.jump[l].resize(n_max + 1);
        for (int n = 0; n <= n_max; ++n) {
            if (!dephasing) {
                const auto& up = kblocks[n + l];
                const auto& lo = kblocks[n];
                const int du = static_cast<int>(up.eigenvalues.size());
                const int dl = static_cast<int>(lo.eigenvalues.size());
                Eigen::VectorXcd lam(du * dl);
                for (int j = 0; j < du; ++j)
                    for (int k = 0; k < dl; ++k)
                        lam(j * dl + k) =
                            -i * (up.eigenvalues(j) - std::conj(lo.eigenvalues(k)));
                sec.lambda[l][n] = std::move(lam);
                sec.right[l][n] =
                    Eigen::kroneckerProduct(up.right, lo.right.conjugate()).eval();
                sec.left[l][n] =
                    Eigen::kroneckerProduct(up.left, lo.left.conjugate()).eval();
            } else {
                const SuperBlock m = conserving_superblock(model, K, l, n);
                BlockEigensystem es = diagonalize_block(
                    m.matrix, rel_tol,
                    "M(" + std::to_string(l) + "," + std::to_string(n) + ")");
                sec.lambda[l][n] = std::move(es.eigenvalues);
                sec.right[l][n] = std::move(es.right);
                sec.left[l][n] = std::move(es.left);
            }
            if (n >= 1) {
                sec.jump[l][n] =
                    dephasing ? jump_eigenbasis_transformed(model, sec.left[l][n - 1],
                                                            sec.right[l][n], l, n)
                              : jump_eigenbasis_tensor(model, kblocks, l, n);
            }
        }
    }
    return sec;
}

} // namespace lindblad

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lindblad/block_eigensolver.hpp"
#include "lindblad/block_operator.hpp"

namespace lindblad {

// Basis a superoperator block is expressed in: the graded product basis or
// the eigenbasis of the conserving part.
enum class SuperBasisTag { original, eigen };

// One block of the Liouvillian acting on the flattened pair block (n+l, n);
// flattening is row major, nu = d_n (j-1) + k.
struct SuperBlock {
    int l = 0;
    int n = 0;
    SuperBasisTag basis = SuperBasisTag::original;
    Eigen::MatrixXcd matrix;
};

// Commutator part -i(K X - X K^dag) restricted to pair block (n+l, n);
// dimension D_{l,n} x D_{l,n}.
SuperBlock coherent_superblock(const BlockOperator& K, int l, int n);

// Dephasing part sum_s (kappa_s/2)(2 C X C^dag - C^dag C X - X C^dag C)
// restricted to pair block (n+l, n). Zero matrix when the model has no
// dephasing channels.
SuperBlock dephasing_superblock(const BlockModel& model, int l, int n);

// Full excitation-conserving part: coherent plus dephasing.
SuperBlock conserving_superblock(const BlockModel& model, const BlockOperator& K, int l,
                                 int n);

// Jump feed sum_s gamma_s A_s X A_s^dag mapping pair block (l, n) into
// (l, n-1); dimension D_{l,n-1} x D_{l,n}. Requires n >= 1 and n + l <= N.
SuperBlock jump_superblock(const BlockModel& model, int l, int n);

// Jump feed rotated into the eigenbasis, computed from the per-block
// eigensystems of K: sum_s gamma_s (Q A_s R)^(n+l) kron conj(Q A_s R)^(n).
// Valid only without dephasing channels.
Eigen::MatrixXcd jump_eigenbasis_tensor(const BlockModel& model,
                                        const std::vector<BlockEigensystem>& kblocks,
                                        int l, int n);

// Jump feed rotated into the eigenbasis via the superblock transforms:
// left_prev^dag * jump_superblock * right_n, with left_prev the left
// transform of pair block (l, n-1) and right_n the right transform of (l, n).
Eigen::MatrixXcd jump_eigenbasis_transformed(const BlockModel& model,
                                             const Eigen::MatrixXcd& left_prev,
                                             const Eigen::MatrixXcd& right_n, int l,
                                             int n);

// Eigen decomposition of every conserving superblock, plus the jump feeds
// rotated into that eigenbasis. Entries are indexed [l][n] with
// 0 <= l <= N and 0 <= n <= N - l; jump[l][0] stays empty.
struct SectorEigensystem {
    std::vector<std::vector<Eigen::VectorXcd>> lambda;
    std::vector<std::vector<Eigen::MatrixXcd>> right;
    std::vector<std::vector<Eigen::MatrixXcd>> left;
    std::vector<std::vector<Eigen::MatrixXcd>> jump;
};

// Without dephasing the eigen data come from tensor products of the K-block
// eigensystems (lambda_{j,k} = -i(eps_j^(n+l) - conj(eps_k^(n)))); with
// dephasing each conserving superblock is diagonalized densely.
SectorEigensystem build_sector_eigensystem(const BlockModel& model,
                                           const std::vector<BlockEigensystem>& kblocks,
                                           double rel_tol);

} // namespace lindblad

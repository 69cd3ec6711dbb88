#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lindblad/block_operator.hpp"

namespace lindblad {

// Biorthonormal eigensystem of one non-Hermitian matrix block.
struct BlockEigensystem {
    Eigen::VectorXcd eigenvalues; // sorted by (real, imaginary)
    Eigen::MatrixXcd right;       // columns r_j, unit norm
    Eigen::MatrixXcd left;        // columns q_j with q_j^dag r_k = delta_jk
};

// Effective non-Hermitian Hamiltonian K = H - (i/2) sum_s gamma_s A_s^dag A_s
// over the loss channels. Dephasing channels do not enter K.
BlockOperator build_effective_hamiltonian(const BlockModel& model);

// Dense non-Hermitian eigensystem with eigenvalues sorted by (real,
// imaginary). rel_tol scales with max(1, largest entry magnitude) to form
// the degeneracy threshold; eigenvalues closer than that raise
// DegenerateBlockError carrying `label`.
BlockEigensystem diagonalize_block(const Eigen::MatrixXcd& block, double rel_tol,
                                   const std::string& label);

// diagonalize_block applied to every block of K; index n = 0..N.
std::vector<BlockEigensystem> diagonalize_effective_blocks(const BlockOperator& K,
                                                           double rel_tol);

// Closed-form eigensystem of the 2x2 Jaynes-Cummings block K^(n), n >= 1:
// eigenvalues (2 delta - i(2n-1)kappa - i gamma)/4 -+ sqrt(g^2 n + w^2) with
// w = (2 delta + i kappa - i gamma)/4, right eigenvectors the columns of the
// complex rotation R(theta_n) with tan(theta_n) = (2 eps_1 + i n kappa) /
// (2 g sqrt(n)), left eigenvectors conj(R). Eigenvalue order follows the
// -+ sign, not the numeric sort.
BlockEigensystem jc_analytic_block(int n, double g, double delta, double kappa,
                                   double gamma, double rel_tol);

} // namespace lindblad

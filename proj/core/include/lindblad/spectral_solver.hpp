#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "lindblad/block_eigensolver.hpp"
#include "lindblad/block_operator.hpp"
#include "lindblad/superblocks.hpp"

namespace lindblad {

struct SolverOptions {
    // Relative threshold below which two block eigenvalues count as equal.
    double degeneracy_tol = 1e-9;
    // Relative threshold below which an eigenvalue gap in the coefficient
    // recursion counts as resonant.
    double resonance_tol = 1e-9;
};

// One eigenpair of the Liouvillian, labeled by its pair sector l, leading
// excitation m and index mu within pair block (l, m).
struct LiouvilleEigenpair {
    int l = 0;
    int m = 0;
    int mu = 1; // 1-based
    std::complex<double> lambda;

    // Expansion coefficients in the superblock eigenbasis: right_chain[n]
    // covers n = 0..m, left_chain[i] covers n = m+i for i = 0..N-l-m.
    std::vector<Eigen::VectorXcd> right_chain;
    std::vector<Eigen::VectorXcd> left_chain;

    // Assembled matrices on the full graded space: L rho_hat = lambda rho_hat
    // and L^dag rho_check = conj(lambda) rho_check.
    Eigen::MatrixXcd right;
    Eigen::MatrixXcd left;
};

// Complete spectral decomposition of the Liouvillian. Families with l > 0
// represent two eigenvalues each: lambda with (rho_hat, rho_check) and
// conj(lambda) with their adjoints.
class LiouvilleEigensystem {
public:
    LiouvilleEigensystem(GradedBasis basis, std::vector<BlockEigensystem> kblocks,
                         std::vector<LiouvilleEigenpair> pairs, bool used_dephasing_path);

    const GradedBasis& basis() const { return basis_; }
    const std::vector<LiouvilleEigenpair>& pairs() const { return pairs_; }

    // Eigensystems of the K blocks (empty when the dephasing path was used).
    const std::vector<BlockEigensystem>& effective_blocks() const { return kblocks_; }

    bool used_dephasing_path() const { return used_dephasing_path_; }

    // Number of eigenvalues counted with multiplicity, equals the square of
    // the Hilbert-space dimension.
    int total_count() const;

    const LiouvilleEigenpair& pair(int l, int m, int mu) const;

    // Steady state: the right eigenvector of lambda = 0, already unit trace
    // by biorthonormality against rho_check = identity.
    const Eigen::MatrixXcd& steady_state() const;

    // Visits every eigenvalue including the adjoint partners of l > 0
    // families. f(lambda, pair, is_adjoint): for is_adjoint the eigenpair
    // matrices are pair.right.adjoint() and pair.left.adjoint().
    template <typename F>
    void for_each_eigenvalue(F&& f) const {
        for (const auto& p : pairs_) {
            f(p.lambda, p, false);
            if (p.l > 0)
                f(std::conj(p.lambda), p, true);
        }
    }

private:
    GradedBasis basis_;
    std::vector<BlockEigensystem> kblocks_;
    std::vector<LiouvilleEigenpair> pairs_;
    bool used_dephasing_path_ = false;
};

// Every Liouvillian eigenvalue of the computed families (l >= 0); the full
// spectrum is this list united with its conjugates for l > 0.
struct EigenvalueRecord {
    int l;
    int m;
    int mu;
    std::complex<double> lambda;
};
std::vector<EigenvalueRecord> liouville_eigenvalues(const BlockModel& model,
                                                    const SolverOptions& opts = {});

// Right coefficient chain of eigenvalue lambda(l,m)_mu: result[n] for
// n = 0..m, with result[m] the unit vector e_mu and
// result[n] = T(l,m;n) jump(l,n+1) result[n+1],
// T diagonal with entries 1/(lambda(l,m)_mu - lambda(l,n)_nu).
std::vector<Eigen::VectorXcd> right_chain(const SectorEigensystem& sec, int l, int m,
                                          int mu, double resonance_tol);

// Left coefficient chain: result[i] for n = m+i up to the last pair block of
// sector l, with result[0] = e_mu and
// result[n] = conj(T(l,m;n)) jump(l,n)^dag result[n-1].
std::vector<Eigen::VectorXcd> left_chain(const SectorEigensystem& sec, int l, int m,
                                         int mu, double resonance_tol);

// Assembles flattened eigen-coefficients into the full matrix: chain[idx]
// expands through the right (rho_hat) or left (rho_check) transforms of
// sector l and lands in blocks (n+l, n).
Eigen::MatrixXcd assemble_right(const GradedBasis& basis, const SectorEigensystem& sec,
                                int l, const std::vector<Eigen::VectorXcd>& chain);
Eigen::MatrixXcd assemble_left(const GradedBasis& basis, const SectorEigensystem& sec,
                               int l, int m, const std::vector<Eigen::VectorXcd>& chain);

// Complete eigensystem of the Liouvillian of a gain-free block model.
LiouvilleEigensystem full_eigensystem(const BlockModel& model,
                                      const SolverOptions& opts = {});

} // namespace lindblad

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "lindblad/block_operator.hpp"

namespace lindblad {

// Brute-force Liouvillian on the full Hilbert space, vectorized globally in
// row-major order. Serves as an independent cross-check of the block
// construction; it shares no index arithmetic with it.
struct DenseSuperoperator {
    GradedBasis basis;
    Eigen::MatrixXcd matrix; // (N^2) x (N^2)
};

// Row-major vectorization: entry (r, c) of a matrix with `cols` columns goes
// to component r * cols + c.
Eigen::VectorXcd vec_rowmajor(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvec_rowmajor(const Eigen::VectorXcd& v, int rows, int cols);

// Builds the dense Liouvillian from the full-space operators. Refuses
// Hilbert-space dimensions above 64 with SizeGuardError.
DenseSuperoperator dense_liouvillian(const BlockModel& model);

// exp(t L) applied to rho0 through the matrix exponential; t >= 0.
Eigen::MatrixXcd dense_propagate(const DenseSuperoperator& sop,
                                 const Eigen::MatrixXcd& rho0, double t);

enum class EigenSide { right, left };

// Relative residual of a claimed eigenpair: ||L v - lambda v|| / ||v|| for
// the right side, ||L^dag v - conj(lambda) v|| / ||v|| for the left side.
double eigenpair_residual(const DenseSuperoperator& sop, std::complex<double> lambda,
                          const Eigen::MatrixXcd& rho, EigenSide side);

// Dense eigendecomposition of the superoperator.
struct DenseEigensystem {
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd eigenvectors; // columns, in eigenvalue order
};
DenseEigensystem dense_eigensystem(const DenseSuperoperator& sop);

} // namespace lindblad

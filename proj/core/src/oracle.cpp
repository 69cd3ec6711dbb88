#include "lindblad/oracle.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "lindblad/errors.hpp"

namespace lindblad {

namespace {

constexpr int kSizeLimit = 64;

} // namespace

Eigen::VectorXcd vec_rowmajor(const Eigen::MatrixXcd& m) {
    Eigen::VectorXcd v(m.rows() * m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            v(r * m.cols() + c) = m(r, c);
    return v;
}

Eigen::MatrixXcd unvec_rowmajor(const Eigen::VectorXcd& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols)
        throw std::invalid_argument("unvec_rowmajor: size mismatch");
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m(r, c) = v(r * cols + c);
    return m;
}

DenseSuperoperator dense_liouvillian(const BlockModel& model) {
    model.validate();
    const int total = model.basis.total_dimension();
    if (total > kSizeLimit)
        throw SizeGuardError(total, kSizeLimit);

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(total, total);
    const Eigen::MatrixXcd h = model.hamiltonian.to_full(model.basis);
    const std::complex<double> i(0.0, 1.0);

    Eigen::MatrixXcd sop = -i * (Eigen::kroneckerProduct(h, id).eval() -
                                 Eigen::kroneckerProduct(id, h.transpose()).eval());

    auto add_channel = [&](double rate, const Eigen::MatrixXcd& a) {
        const Eigen::MatrixXcd ata = a.adjoint() * a;
        sop += (0.5 * rate) *
               (2.0 * Eigen::kroneckerProduct(a, a.conjugate()).eval() -
                Eigen::kroneckerProduct(ata, id).eval() -
                Eigen::kroneckerProduct(id, ata.transpose()).eval());
    };
    for (const auto& ch : model.loss)
        add_channel(ch.rate, ch.op.to_full(model.basis));
    for (const auto& ch : model.dephasing)
        add_channel(ch.rate, ch.op.to_full(model.basis));

    return {model.basis, std::move(sop)};
}

Eigen::MatrixXcd dense_propagate(const DenseSuperoperator& sop,
                                 const Eigen::MatrixXcd& rho0, double t) {
    if (!(t >= 0.0))
        throw std::invalid_argument("dense_propagate: t must be >= 0");
    const int total = sop.basis.total_dimension();
    if (rho0.rows() != total || rho0.cols() != total)
        throw std::invalid_argument("dense_propagate: state has wrong dimension");
    const Eigen::MatrixXcd propagator = (t * sop.matrix).exp();
    return unvec_rowmajor(propagator * vec_rowmajor(rho0), total, total);
}

double eigenpair_residual(const DenseSuperoperator& sop, std::complex<double> lambda,
                          const Eigen::MatrixXcd& rho, EigenSide side) {
    const Eigen::VectorXcd v = vec_rowmajor(rho);
    const double norm = v.norm();
    if (norm == 0.0)
        throw std::invalid_argument("eigenpair_residual: zero eigenvector");
    if (side == EigenSide::right)
        return (sop.matrix * v - lambda * v).norm() / norm;
    return (sop.matrix.adjoint() * v - std::conj(lambda) * v).norm() / norm;
}

DenseEigensystem dense_eigensystem(const DenseSuperoperator& sop) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(sop.matrix);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense_eigensystem: eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace lindblad

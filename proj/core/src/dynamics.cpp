#include "lindblad/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lindblad/errors.hpp"

namespace lindblad {

namespace {

using std::complex;

complex<double> overlap_trace(const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& rho) {
    // Tr[left^dag rho] without forming the product.
    return (left.conjugate().cwiseProduct(rho)).sum();
}

void check_state(const GradedBasis& basis, const Eigen::MatrixXcd& rho0) {
    const int total = basis.total_dimension();
    if (rho0.rows() != total || rho0.cols() != total)
        throw std::invalid_argument("state has wrong dimension");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("state is not Hermitian");
    if (std::abs(rho0.trace() - 1.0) > 1e-9)
        throw std::invalid_argument("state does not have unit trace");
}

// All eigen elements in for_each order, with the adjoint matrices realized.
struct Elements {
    std::vector<complex<double>> lambda;
    std::vector<Eigen::MatrixXcd> right;
    std::vector<Eigen::MatrixXcd> left;
};

Elements collect_elements(const LiouvilleEigensystem& eig) {
    Elements out;
    eig.for_each_eigenvalue([&](complex<double> lambda, const LiouvilleEigenpair& p,
                                bool adjoint) {
        out.lambda.push_back(lambda);
        if (adjoint) {
            out.right.push_back(p.right.adjoint());
            out.left.push_back(p.left.adjoint());
        } else {
            out.right.push_back(p.right);
            out.left.push_back(p.left);
        }
    });
    return out;
}

Eigen::VectorXcd expansion_coefficients(const LiouvilleEigensystem& eig,
                                        const Eigen::MatrixXcd& rho) {
    Eigen::VectorXcd coeff(eig.total_count());
    int idx = 0;
    eig.for_each_eigenvalue([&](complex<double>, const LiouvilleEigenpair& p,
                                bool adjoint) {
        // The adjoint partner has rho_check = left^dag, so its coefficient
        // is Tr[left rho] = sum_ij left_ji rho_ij.
        coeff(idx++) = adjoint ? (p.left.transpose().cwiseProduct(rho)).sum()
                               : overlap_trace(p.left, rho);
    });
    return coeff;
}

} // namespace

Eigen::VectorXcd expand_state(const LiouvilleEigensystem& eig,
                              const Eigen::MatrixXcd& rho0) {
    check_state(eig.basis(), rho0);
    return expansion_coefficients(eig, rho0);
}

Eigen::MatrixXcd evolve(const LiouvilleEigensystem& eig, const Eigen::MatrixXcd& rho0,
                        double t) {
    if (!(t >= 0.0))
        throw std::invalid_argument("evolve: t must be >= 0");
    check_state(eig.basis(), rho0);
    const int total = eig.basis().total_dimension();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(total, total);
    eig.for_each_eigenvalue([&](complex<double> lambda, const LiouvilleEigenpair& p,
                                bool adjoint) {
        const complex<double> c = adjoint
                                      ? (p.left.transpose().cwiseProduct(rho0)).sum()
                                      : overlap_trace(p.left, rho0);
        const complex<double> factor = c * std::exp(lambda * t);
        if (adjoint)
            rho += factor * p.right.adjoint();
        else
            rho += factor * p.right;
    });
    return rho;
}

std::complex<double> two_time_correlation(const LiouvilleEigensystem& eig,
                                          const Eigen::MatrixXcd& rho0,
                                          const Eigen::MatrixXcd& plus_op,
                                          const Eigen::MatrixXcd& minus_op, double t,
                                          double t_prime) {
    if (!(t >= 0.0) || !(t_prime >= 0.0))
        throw std::invalid_argument("two_time_correlation: times must be >= 0");
    if (t_prime < t) {
        if ((minus_op - plus_op.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument(
                "two_time_correlation: t' < t needs minus_op = plus_op^dag");
        return std::conj(two_time_correlation(eig, rho0, plus_op, minus_op, t_prime, t));
    }
    check_state(eig.basis(), rho0);

    const Elements el = collect_elements(eig);
    const int count = static_cast<int>(el.lambda.size());
    std::vector<complex<double>> emission(count);
    for (int b = 0; b < count; ++b)
        emission[b] = (minus_op.transpose().cwiseProduct(el.right[b])).sum();
    complex<double> result = 0.0;
    for (int a = 0; a < count; ++a) {
        const complex<double> ca = overlap_trace(el.left[a], rho0);
        if (std::abs(ca) == 0.0)
            continue;
        const Eigen::MatrixXcd pushed = el.right[a] * plus_op;
        for (int b = 0; b < count; ++b) {
            const complex<double> dab = overlap_trace(el.left[b], pushed);
            result += ca * dab * emission[b] * std::exp(el.lambda[a] * t) *
                      std::exp(el.lambda[b] * (t_prime - t));
        }
    }
    return result;
}

SpectrumResult emission_spectrum(const LiouvilleEigensystem& eig,
                                 const Eigen::MatrixXcd& rho0,
                                 const Eigen::VectorXd& omega,
                                 const BlockOperator& probe) {
    check_state(eig.basis(), rho0);
    if (probe.kind() != OperatorKind::lowering)
        throw std::invalid_argument("emission_spectrum: probe must lower excitation");
    const Eigen::MatrixXcd minus_op = probe.to_full(eig.basis());
    const Eigen::MatrixXcd plus_op = minus_op.adjoint();

    const Elements el = collect_elements(eig);
    const int count = static_cast<int>(el.lambda.size());

    // Weight factors T_{a,b}; most vanish because the traces select single
    // pair sectors.
    std::vector<WeightTerm> terms;
    double max_weight = 0.0;
    std::vector<complex<double>> emission(count);
    for (int b = 0; b < count; ++b)
        emission[b] = (minus_op.transpose().cwiseProduct(el.right[b])).sum();
    for (int a = 0; a < count; ++a) {
        const complex<double> ca = overlap_trace(el.left[a], rho0);
        if (std::abs(ca) == 0.0)
            continue;
        const Eigen::MatrixXcd pushed = el.right[a] * plus_op;
        for (int b = 0; b < count; ++b) {
            const complex<double> weight =
                ca * overlap_trace(el.left[b], pushed) * emission[b];
            if (std::abs(weight) > 0.0) {
                terms.push_back({el.lambda[a], el.lambda[b], weight});
                max_weight = std::max(max_weight, std::abs(weight));
            }
        }
    }
    if (max_weight == 0.0)
        throw DivergentSpectrumError(0.0);

    std::vector<WeightTerm> kept;
    for (const auto& term : terms) {
        if (std::abs(term.weight) < 1e-14 * max_weight)
            continue;
        if (term.lambda_a.real() >= -1e-12)
            throw DivergentSpectrumError(term.lambda_a);
        if (term.lambda_b.real() >= -1e-12)
            throw DivergentSpectrumError(term.lambda_b);
        kept.push_back(term);
    }

    SpectrumResult result;
    result.omega = omega;
    result.weights = std::move(kept);
    result.s.resize(omega.size());
    result.S.resize(omega.size());

    complex<double> varsigma = 0.0;
    for (const auto& term : result.weights)
        varsigma += term.weight / (-term.lambda_a);
    result.varsigma = varsigma.real();
    if (!(result.varsigma > 0.0))
        throw DivergentSpectrumError(0.0);

    const complex<double> i(0.0, 1.0);
    for (int w = 0; w < omega.size(); ++w) {
        complex<double> sum = 0.0;
        for (const auto& term : result.weights) {
            const complex<double> den_cross = term.lambda_a - term.lambda_b - i * omega(w);
            const complex<double> den_line = term.lambda_b + i * omega(w);
            const double floor =
                1e-12 * (1.0 + std::abs(term.lambda_a) + std::abs(term.lambda_b) +
                         std::abs(omega(w)));
            if (std::abs(den_cross) < floor || std::abs(den_line) < floor)
                throw DivergentSpectrumError(term.lambda_a - term.lambda_b);
            sum += term.weight / (den_cross * den_line);
        }
        result.s(w) = sum.real();
        result.S(w) = result.s(w) / (2.0 * std::numbers::pi * result.varsigma);
    }
    return result;
}

double jc_spectrum_closed_form(double omega, double g, double delta, double kappa,
                               double gamma) {
    const complex<double> i(0.0, 1.0);
    const complex<double> num = 2.0 * (2.0 * omega + i * kappa);
    const complex<double> den =
        4.0 * g * g + (2.0 * delta - 2.0 * omega - i * gamma) * (2.0 * omega + i * kappa);
    return std::norm(num / den);
}

double jc_varsigma_closed_form(double g, double delta, double kappa, double gamma) {
    const double gk = gamma + kappa;
    const double lorentz = 4.0 * delta * delta + gk * gk;
    return (4.0 * g * g * gk + kappa * lorentz) /
           (4.0 * g * g * gk * gk + gamma * kappa * lorentz);
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("trace_distance: shape mismatch");
    Eigen::MatrixXcd diff = a - b;
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace lindblad

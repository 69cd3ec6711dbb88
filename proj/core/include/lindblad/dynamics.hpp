#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "lindblad/spectral_solver.hpp"

namespace lindblad {

// Expansion coefficients Tr[rho_check^dag rho0] of a density matrix over the
// eigenbasis, ordered like for_each_eigenvalue (each l > 0 family directly
// followed by its adjoint partner). rho0 must be Hermitian with unit trace
// within 1e-9.
Eigen::VectorXcd expand_state(const LiouvilleEigensystem& eig,
                              const Eigen::MatrixXcd& rho0);

// rho(t) = sum_a exp(lambda_a t) Tr[rho_check_a^dag rho0] rho_hat_a; t >= 0.
Eigen::MatrixXcd evolve(const LiouvilleEigensystem& eig, const Eigen::MatrixXcd& rho0,
                        double t);

// Two-time correlation <P(t) M(t')> of a raising probe P and its lowering
// partner M = P^dag under quantum regression. For t' < t the conjugate
// symmetry <P(t) M(t')> = conj(<P(t') M(t)>) is used, which requires
// minus_op = plus_op^dag.
std::complex<double> two_time_correlation(const LiouvilleEigensystem& eig,
                                          const Eigen::MatrixXcd& rho0,
                                          const Eigen::MatrixXcd& plus_op,
                                          const Eigen::MatrixXcd& minus_op, double t,
                                          double t_prime);

// One term of the double eigenvalue sum of the emission spectrum.
struct WeightTerm {
    std::complex<double> lambda_a;  // outer eigenvalue (initial overlap)
    std::complex<double> lambda_b;  // inner eigenvalue (emission trace)
    std::complex<double> weight;    // T_{a,b}
};

struct SpectrumResult {
    Eigen::VectorXd omega;
    Eigen::VectorXd s;        // unnormalized spectrum
    Eigen::VectorXd S;        // s / (2 pi varsigma)
    double varsigma = 0.0;    // total emission normalization
    std::vector<WeightTerm> weights; // terms surviving the pruning
};

// Emission spectrum of the probe's lowering operator out of initial state
// rho0: s(omega) = sum_{a,b} T_{a,b} / ((lambda_a - lambda_b - i omega)
// (lambda_b + i omega)) and varsigma = sum T_{a,b} / (-lambda_a), with
// T_{a,b} = Tr[rho_check_a^dag rho0] Tr[rho_check_b^dag rho_hat_a P]
// Tr[M rho_hat_b] for P = M^dag. Terms with |T| below 1e-14 of the largest
// are pruned; surviving eigenvalues must decay or DivergentSpectrumError is
// raised.
SpectrumResult emission_spectrum(const LiouvilleEigensystem& eig,
                                 const Eigen::MatrixXcd& rho0,
                                 const Eigen::VectorXd& omega,
                                 const BlockOperator& probe);

// Closed-form Jaynes-Cummings emission spectrum for the initially excited
// atom: s(omega) = |2(2 omega + i kappa) / (4 g^2 + (2 delta - 2 omega -
// i gamma)(2 omega + i kappa))|^2.
double jc_spectrum_closed_form(double omega, double g, double delta, double kappa,
                               double gamma);

// Closed-form normalization varsigma of the same spectrum.
double jc_varsigma_closed_form(double g, double delta, double kappa, double gamma);

// Half the trace norm of the difference of two Hermitian matrices.
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

} // namespace lindblad

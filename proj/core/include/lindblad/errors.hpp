#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lindblad {

// Two eigenvalues of a block are too close to separate, so a biorthonormal
// eigenbasis of that block cannot be formed reliably.
class DegenerateBlockError : public std::runtime_error {
public:
    DegenerateBlockError(std::string block_label, int index_a, int index_b,
                         std::complex<double> value_a, std::complex<double> value_b);

    std::string block_label;
    int index_a;
    int index_b;
    std::complex<double> value_a;
    std::complex<double> value_b;
};

// A coefficient recursion hit a vanishing eigenvalue gap
// lambda^(l,m)_mu - lambda^(l,n)_nu between different pair blocks.
class ResonanceError : public std::runtime_error {
public:
    ResonanceError(int l, int m, int mu, int n, int nu,
                   std::complex<double> lambda_m, std::complex<double> lambda_n);

    int l;
    int m;
    int mu;
    int n;
    int nu;
    std::complex<double> lambda_m;
    std::complex<double> lambda_n;
};

// The emission-spectrum sum requires every weight-carrying eigenvalue to have
// a strictly negative real part; a non-decaying one makes the integral diverge.
class DivergentSpectrumError : public std::runtime_error {
public:
    explicit DivergentSpectrumError(std::complex<double> lambda);

    std::complex<double> lambda;
};

// A dense-oracle routine was asked for a problem above its size limit.
class SizeGuardError : public std::runtime_error {
public:
    SizeGuardError(int dimension, int limit);

    int dimension;
    int limit;
};

} // namespace lindblad

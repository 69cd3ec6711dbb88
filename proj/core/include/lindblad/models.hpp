#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lindblad/block_operator.hpp"

namespace lindblad {

// Jaynes-Cummings model: one two-level atom coupled to a lossy cavity mode.
// Basis |n,1> = |g,n>, |n,2> = |e,n-1>; block dimensions [1,2,...,2] up to
// excitation n_max. Rates: cavity decay kappa, atomic decay gamma.
BlockModel build_jc(double g, double delta, double kappa, double gamma, int n_max);

// Jaynes-Cummings model with an extra atomic dephasing channel sigma_z at
// rate gamma_z.
BlockModel build_jc_dephasing(double g, double delta, double kappa, double gamma,
                              double gamma_z, int n_max);

// Two-atom Tavis-Cummings model: two two-level atoms in one lossy cavity.
// Basis |n,1> = |gg,n>, |n,2> = |ge,n-1>, |n,3> = |eg,n-1>, |n,4> = |ee,n-2>;
// block dimensions [1,3,4,...,4] up to excitation n_max.
BlockModel build_tc2(double g1, double g2, double delta1, double delta2,
                     double gamma1, double gamma2, double kappa, int n_max);

// Collection of M two-level systems with XXZ-type pair couplings.
// Index conventions are 1-based in formulas, 0-based in the vectors/matrices.
struct SpinSystem {
    int num_spins = 0;
    std::vector<double> delta;   // level splittings, size M
    Eigen::MatrixXd J;           // sigma_z sigma_z couplings, upper triangle used
    Eigen::MatrixXd eta;         // flip-flop couplings, upper triangle used
    std::vector<double> gamma;   // per-spin loss rates, size M
    std::vector<double> gamma_z; // per-spin dephasing rates, size M (may be empty)
};

// Cavity mode coupled to every spin with strength g[l]; photon loss kappa.
struct CavityCoupling {
    std::vector<double> g; // size M
    double kappa = 0.0;
    int cutoff = 0; // largest total excitation kept
};

// Interacting spins without an oscillator. Block n holds the C(M,n) states of
// spin excitation n, tuples ordered lexicographically with 0 = ground.
BlockModel build_spin_model(const SpinSystem& sys);

// Spins coupled to one cavity mode, graded by the total excitation
// n = photons + excited spins up to cav.cutoff. Within block n, states are
// ordered by ascending spin excitation, then lexicographic spin tuple.
BlockModel build_spin_cavity_model(const SpinSystem& sys, const CavityCoupling& cav);

} // namespace lindblad

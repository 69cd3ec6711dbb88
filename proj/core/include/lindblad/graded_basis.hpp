#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lindblad {

// Hilbert-space basis graded by the excitation number n. Block n holds the
// d_n states |n,j>, j = 1..d_n, stored consecutively in order of ascending n.
class GradedBasis {
public:
    explicit GradedBasis(std::vector<int> dims, std::vector<std::string> labels = {});

    // Largest excitation number N.
    int max_excitation() const { return static_cast<int>(dims_.size()) - 1; }

    // Dimension d_n of excitation block n.
    int block_dim(int n) const;

    const std::vector<int>& dims() const { return dims_; }

    // Total Hilbert-space dimension, the sum of all d_n.
    int total_dimension() const { return total_; }

    // Index of the first state of block n in the full basis (0-based).
    int block_offset(int n) const;

    // Global index of |n,j> (0-based; j is 1-based within the block).
    int state_index(int n, int j) const;

    // Optional human-readable label of |n,j>; empty when none were given.
    const std::string& label(int n, int j) const;

    bool has_labels() const { return !labels_.empty(); }

    // Dimension D_{l,n} = d_{n+l} d_n of the pair block (n+l, n).
    int pair_dim(int l, int n) const;

private:
    std::vector<int> dims_;
    std::vector<int> offsets_;
    std::vector<std::string> labels_;
    int total_ = 0;
};

// Shape record for the pair block coupling bra excitation n to ket
// excitation n+l; dim = d_{n+l} d_n.
struct PairBlockShape {
    int l = 0;
    int n = 0;
    int dim = 0;
};

PairBlockShape pair_block_shape(const GradedBasis& basis, int l, int n);

// Row-major flattening of a pair index within one block: a matrix element
// (j,k) of a block with `cols` columns maps to nu = cols*(j-1) + k.
// Both inputs and the result are 1-based.
int flatten_pair(int j, int k, int cols);

// Inverse of flatten_pair; returns {j, k}.
std::pair<int, int> unflatten_pair(int nu, int cols);

} // namespace lindblad

#include "lindblad/graded_basis.hpp"

#include <numeric>
#include <stdexcept>

namespace lindblad {

GradedBasis::GradedBasis(std::vector<int> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
    if (dims_.empty())
        throw std::invalid_argument("GradedBasis: dims must not be empty");
    for (int d : dims_)
        if (d < 1)
            throw std::invalid_argument("GradedBasis: every block dimension must be >= 1");
    offsets_.resize(dims_.size());
    int off = 0;
    for (std::size_t n = 0; n < dims_.size(); ++n) {
        offsets_[n] = off;
        off += dims_[n];
    }
    total_ = off;
    if (!labels_.empty() && static_cast<int>(labels_.size()) != total_)
        throw std::invalid_argument("GradedBasis: labels must cover every state");
}

int GradedBasis::block_dim(int n) const {
    if (n < 0 || n > max_excitation())
        throw std::out_of_range("GradedBasis::block_dim: excitation out of range");
    return dims_[n];
}

int GradedBasis::block_offset(int n) const {
    if (n < 0 || n > max_excitation())
        throw std::out_of_range("GradedBasis::block_offset: excitation out of range");
    return offsets_[n];
}

int GradedBasis::state_index(int n, int j) const {
    if (j < 1 || j > block_dim(n))
        throw std::out_of_range("GradedBasis::state_index: j out of range");
    return offsets_[n] + j - 1;
}

const std::string& GradedBasis::label(int n, int j) const {
    static const std::string empty;
    if (labels_.empty())
        return empty;
    return labels_[state_index(n, j)];
}

int GradedBasis::pair_dim(int l, int n) const {
    return block_dim(n + l) * block_dim(n);
}

PairBlockShape pair_block_shape(const GradedBasis& basis, int l, int n) {
    if (l < 0)
        throw std::invalid_argument("pair_block_shape: l must be >= 0");
    return {l, n, basis.pair_dim(l, n)};
}

int flatten_pair(int j, int k, int cols) {
    if (cols < 1 || j < 1 || k < 1 || k > cols)
        throw std::invalid_argument("flatten_pair: indices out of range");
    return cols * (j - 1) + k;
}

std::pair<int, int> unflatten_pair(int nu, int cols) {
    if (cols < 1 || nu < 1)
        throw std::invalid_argument("unflatten_pair: indices out of range");
    int j = (nu - 1) / cols + 1;
    int k = (nu - 1) % cols + 1;
    return {j, k};
}

} // namespace lindblad

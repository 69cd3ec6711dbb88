#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "lindblad/graded_basis.hpp"

namespace lindblad {

// Shape class of an operator relative to the excitation grading.
// conserving: block n maps excitation block n to itself (d_n x d_n).
// lowering:   block n maps excitation block n to n-1 (d_{n-1} x d_n).
enum class OperatorKind { conserving, lowering };

// Operator stored as its nonzero blocks with respect to a graded basis.
class BlockOperator {
public:
    // For conserving operators blocks[n] acts on excitation n (n = 0..N).
    // For lowering operators blocks[i] maps excitation i+1 to i (i = 0..N-1).
    BlockOperator(OperatorKind kind, std::vector<Eigen::MatrixXcd> blocks);

    OperatorKind kind() const { return kind_; }

    // Block addressed by the source excitation n: conserving operators accept
    // n = 0..N, lowering operators n = 1..N.
    const Eigen::MatrixXcd& block(int n) const;

    // Number of stored blocks.
    int num_blocks() const { return static_cast<int>(blocks_.size()); }

    // Checks block shapes against the basis; throws std::invalid_argument.
    void validate(const GradedBasis& basis) const;

    // Dense matrix on the full graded space.
    Eigen::MatrixXcd to_full(const GradedBasis& basis) const;

private:
    OperatorKind kind_;
    std::vector<Eigen::MatrixXcd> blocks_;
};

// One Lindblad channel: dissipation rate and the operator it applies.
struct LindbladChannel {
    double rate;
    BlockOperator op;
};

// A master-equation model whose Hamiltonian conserves the excitation number
// and whose channels either lower it (loss) or conserve it (dephasing).
struct BlockModel {
    std::string name;
    GradedBasis basis;
    BlockOperator hamiltonian;
    std::vector<LindbladChannel> loss;
    std::vector<LindbladChannel> dephasing;
    std::map<std::string, double> params;

    // Named observables and probe operators, e.g. "sigma_minus" or "a".
    std::map<std::string, BlockOperator> operators;

    // Checks kinds, shapes, Hermitian Hamiltonian blocks and positive rates;
    // throws std::invalid_argument on violation.
    void validate() const;

    bool has_dephasing() const { return !dephasing.empty(); }

    // Looks up a named operator; throws std::invalid_argument when missing.
    const BlockOperator& named_operator(const std::string& name) const;
};

} // namespace lindblad

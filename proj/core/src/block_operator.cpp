#include "lindblad/block_operator.hpp"

#include <stdexcept>

namespace lindblad {

BlockOperator::BlockOperator(OperatorKind kind, std::vector<Eigen::MatrixXcd> blocks)
    : kind_(kind), blocks_(std::move(blocks)) {
    if (blocks_.empty())
        throw std::invalid_argument("BlockOperator: no blocks given");
    for (const auto& b : blocks_)
        if (!b.allFinite())
            throw std::invalid_argument("BlockOperator: non-finite entries");
}

const Eigen::MatrixXcd& BlockOperator::block(int n) const {
    int i = (kind_ == OperatorKind::lowering) ? n - 1 : n;
    if (i < 0 || i >= num_blocks())
        throw std::out_of_range("BlockOperator::block: excitation out of range");
    return blocks_[i];
}

void BlockOperator::validate(const GradedBasis& basis) const {
    const int N = basis.max_excitation();
    if (kind_ == OperatorKind::conserving) {
        if (num_blocks() != N + 1)
            throw std::invalid_argument("BlockOperator: conserving operator needs N+1 blocks");
        for (int n = 0; n <= N; ++n)
            if (blocks_[n].rows() != basis.block_dim(n) || blocks_[n].cols() != basis.block_dim(n))
                throw std::invalid_argument("BlockOperator: conserving block has wrong shape");
    } else {
        if (num_blocks() != N)
            throw std::invalid_argument("BlockOperator: lowering operator needs N blocks");
        for (int n = 1; n <= N; ++n)
            if (blocks_[n - 1].rows() != basis.block_dim(n - 1) ||
                blocks_[n - 1].cols() != basis.block_dim(n))
                throw std::invalid_argument("BlockOperator: lowering block has wrong shape");
    }
}

Eigen::MatrixXcd BlockOperator::to_full(const GradedBasis& basis) const {
    validate(basis);
    const int N = basis.max_excitation();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(basis.total_dimension(), basis.total_dimension());
    if (kind_ == OperatorKind::conserving) {
        for (int n = 0; n <= N; ++n)
            full.block(basis.block_offset(n), basis.block_offset(n), basis.block_dim(n),
                       basis.block_dim(n)) = block(n);
    } else {
        for (int n = 1; n <= N; ++n)
            full.block(basis.block_offset(n - 1), basis.block_offset(n),
                       basis.block_dim(n - 1), basis.block_dim(n)) = block(n);
    }
    return full;
}

void BlockModel::validate() const {
    hamiltonian.validate(basis);
    if (hamiltonian.kind() != OperatorKind::conserving)
        throw std::invalid_argument("BlockModel: Hamiltonian must conserve excitation");
    for (int n = 0; n <= basis.max_excitation(); ++n) {
        const auto& h = hamiltonian.block(n);
        if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("BlockModel: Hamiltonian block is not Hermitian");
    }
    for (const auto& ch : loss) {
        ch.op.validate(basis);
        if (ch.op.kind() != OperatorKind::lowering)
            throw std::invalid_argument("BlockModel: loss channel must lower excitation");
        if (!(ch.rate > 0.0))
            throw std::invalid_argument("BlockModel: loss rate must be positive");
    }
    for (const auto& ch : dephasing) {
        ch.op.validate(basis);
        if (ch.op.kind() != OperatorKind::conserving)
            throw std::invalid_argument("BlockModel: dephasing channel must conserve excitation");
        if (!(ch.rate > 0.0))
            throw std::invalid_argument("BlockModel: dephasing rate must be positive");
    }
    for (const auto& [name, op] : operators)
        op.validate(basis);
}

const BlockOperator& BlockModel::named_operator(const std::string& opname) const {
    auto it = operators.find(opname);
    if (it == operators.end())
        throw std::invalid_argument("BlockModel: unknown operator '" + opname + "'");
    return it->second;
}

} // namespace lindblad

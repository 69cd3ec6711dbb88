#include "lindblad/models.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace lindblad {

namespace {

using Eigen::MatrixXcd;

MatrixXcd zeros(int r, int c) { return MatrixXcd::Zero(r, c); }

void require(bool ok, const std::string& msg) {
    if (!ok)
        throw std::invalid_argument(msg);
}

// One basis state of a spin register with an optional photon count.
struct SpinState {
    int photons;
    unsigned mask; // bit M-l holds spin l, 1 = excited
};

int spin_bit(unsigned mask, int l, int M) { return (mask >> (M - l)) & 1u; }

// States of excitation block n, ordered by ascending spin excitation and
// lexicographic spin tuple; photons make up the remainder when with_cavity.
std::vector<SpinState> block_states(int M, int n, bool with_cavity) {
    std::vector<SpinState> states;
    const int lo = with_cavity ? 0 : n;
    const int hi = std::min(n, M);
    for (int nspin = lo; nspin <= hi; ++nspin) {
        for (unsigned mask = 0; mask < (1u << M); ++mask) {
            if (static_cast<int>(__builtin_popcount(mask)) != nspin)
                continue;
            states.push_back({n - nspin, mask});
        }
    }
    return states;
}

std::string spin_label(const SpinState& s, int M, bool with_cavity) {
    std::string out;
    for (int l = 1; l <= M; ++l)
        out += spin_bit(s.mask, l, M) ? 'e' : 'g';
    if (with_cavity)
        out += "," + std::to_string(s.photons);
    return out;
}

int find_state(const std::vector<SpinState>& states, int photons, unsigned mask) {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].photons == photons && states[i].mask == mask)
            return static_cast<int>(i);
    return -1;
}

BlockModel build_spin_generic(const SpinSystem& sys, const CavityCoupling* cav) {
    const int M = sys.num_spins;
    require(M >= 1, "spin model: need at least one spin");
    require(M <= 16, "spin model: too many spins");
    require(static_cast<int>(sys.delta.size()) == M, "spin model: delta size mismatch");
    require(static_cast<int>(sys.gamma.size()) == M, "spin model: gamma size mismatch");
    require(sys.gamma_z.empty() || static_cast<int>(sys.gamma_z.size()) == M,
            "spin model: gamma_z size mismatch");
    const bool has_J = sys.J.size() > 0;
    const bool has_eta = sys.eta.size() > 0;
    require(!has_J || (sys.J.rows() == M && sys.J.cols() == M),
            "spin model: J must be M x M");
    require(!has_eta || (sys.eta.rows() == M && sys.eta.cols() == M),
            "spin model: eta must be M x M");
    for (double r : sys.gamma)
        require(r >= 0.0, "spin model: loss rates must be >= 0");
    for (double r : sys.gamma_z)
        require(r >= 0.0, "spin model: dephasing rates must be >= 0");

    const bool with_cavity = cav != nullptr;
    int N = M;
    if (with_cavity) {
        require(cav->cutoff >= 1, "spin model: cavity cutoff must be >= 1");
        require(static_cast<int>(cav->g.size()) == M, "spin model: cavity g size mismatch");
        require(cav->kappa >= 0.0, "spin model: kappa must be >= 0");
        N = cav->cutoff;
    }

    std::vector<std::vector<SpinState>> blocks(N + 1);
    std::vector<int> dims(N + 1);
    std::vector<std::string> labels;
    for (int n = 0; n <= N; ++n) {
        blocks[n] = block_states(M, n, with_cavity);
        dims[n] = static_cast<int>(blocks[n].size());
        for (const auto& s : blocks[n])
            labels.push_back(spin_label(s, M, with_cavity));
    }
    GradedBasis basis(dims, labels);

    auto coupling = [&](const Eigen::MatrixXd& mat, int l, int j) {
        // Couplings are read from the upper triangle, l < j, 1-based.
        return mat.size() > 0 ? mat(l - 1, j - 1) : 0.0;
    };

    std::vector<MatrixXcd> hblocks(N + 1);
    for (int n = 0; n <= N; ++n) {
        const auto& st = blocks[n];
        MatrixXcd h = zeros(dims[n], dims[n]);
        for (int c = 0; c < dims[n]; ++c) {
            double diag = 0.0;
            for (int l = 1; l <= M; ++l)
                diag += sys.delta[l - 1] * spin_bit(st[c].mask, l, M);
            for (int l = 1; l <= M; ++l)
                for (int j = l + 1; j <= M; ++j) {
                    const double zl = spin_bit(st[c].mask, l, M) ? 1.0 : -1.0;
                    const double zj = spin_bit(st[c].mask, j, M) ? 1.0 : -1.0;
                    diag += coupling(sys.J, l, j) * zl * zj;
                }
            h(c, c) = diag;
            for (int l = 1; l <= M; ++l)
                for (int j = l + 1; j <= M; ++j) {
                    // Flip-flop term sigma_l^+ sigma_j^-.
                    if (spin_bit(st[c].mask, l, M) == 0 && spin_bit(st[c].mask, j, M) == 1) {
                        const unsigned target =
                            (st[c].mask | (1u << (M - l))) & ~(1u << (M - j));
                        const int r = find_state(st, st[c].photons, target);
                        const double eta = coupling(sys.eta, l, j);
                        if (r >= 0 && eta != 0.0) {
                            h(r, c) += eta;
                            h(c, r) += eta;
                        }
                    }
                }
            if (with_cavity && st[c].photons >= 1) {
                // Cavity exchange a sigma_l^+ within the same block.
                for (int l = 1; l <= M; ++l) {
                    if (spin_bit(st[c].mask, l, M) == 1)
                        continue;
                    const unsigned target = st[c].mask | (1u << (M - l));
                    const int r = find_state(st, st[c].photons - 1, target);
                    if (r >= 0) {
                        const double amp = cav->g[l - 1] * std::sqrt(st[c].photons);
                        h(r, c) += amp;
                        h(c, r) += amp;
                    }
                }
            }
        }
        hblocks[n] = h;
    }

    auto spin_lowering = [&](int l) {
        std::vector<MatrixXcd> out(N);
        for (int n = 1; n <= N; ++n) {
            MatrixXcd b = zeros(dims[n - 1], dims[n]);
            for (int c = 0; c < dims[n]; ++c) {
                if (spin_bit(blocks[n][c].mask, l, M) == 0)
                    continue;
                const unsigned target = blocks[n][c].mask & ~(1u << (M - l));
                const int r = find_state(blocks[n - 1], blocks[n][c].photons, target);
                if (r >= 0)
                    b(r, c) = 1.0;
            }
            out[n - 1] = b;
        }
        return BlockOperator(OperatorKind::lowering, out);
    };

    auto spin_z = [&](int l) {
        std::vector<MatrixXcd> out(N + 1);
        for (int n = 0; n <= N; ++n) {
            MatrixXcd b = zeros(dims[n], dims[n]);
            for (int c = 0; c < dims[n]; ++c)
                b(c, c) = spin_bit(blocks[n][c].mask, l, M) ? 1.0 : -1.0;
            out[n] = b;
        }
        return BlockOperator(OperatorKind::conserving, out);
    };

    std::map<std::string, BlockOperator> operators;
    std::vector<LindbladChannel> loss;
    std::vector<LindbladChannel> dephasing;

    if (with_cavity) {
        std::vector<MatrixXcd> ab(N);
        for (int n = 1; n <= N; ++n) {
            MatrixXcd b = zeros(dims[n - 1], dims[n]);
            for (int c = 0; c < dims[n]; ++c) {
                if (blocks[n][c].photons < 1)
                    continue;
                const int r = find_state(blocks[n - 1], blocks[n][c].photons - 1,
                                         blocks[n][c].mask);
                if (r >= 0)
                    b(r, c) = std::sqrt(blocks[n][c].photons);
            }
            ab[n - 1] = b;
        }
        BlockOperator a(OperatorKind::lowering, ab);
        if (cav->kappa > 0.0)
            loss.push_back({cav->kappa, a});
        operators.emplace("a", std::move(a));
    }
    for (int l = 1; l <= M; ++l) {
        BlockOperator sm = spin_lowering(l);
        if (sys.gamma[l - 1] > 0.0)
            loss.push_back({sys.gamma[l - 1], sm});
        operators.emplace("sigma_minus_" + std::to_string(l), std::move(sm));

        BlockOperator sz = spin_z(l);
        if (!sys.gamma_z.empty() && sys.gamma_z[l - 1] > 0.0)
            dephasing.push_back({sys.gamma_z[l - 1], sz});
        operators.emplace("sigma_z_" + std::to_string(l), std::move(sz));
    }

    std::map<std::string, double> params;
    params["M"] = static_cast<double>(M);

    BlockModel model{with_cavity ? "spin_cavity_model" : "spin_model",
                     std::move(basis),
                     BlockOperator(OperatorKind::conserving, std::move(hblocks)),
                     std::move(loss),
                     std::move(dephasing),
                     std::move(params),
                     std::move(operators)};
    model.validate();
    return model;
}

} // namespace

BlockModel build_jc(double g, double delta, double kappa, double gamma, int n_max) {
    require(n_max >= 1, "build_jc: n_max must be >= 1");
    require(kappa >= 0.0 && gamma >= 0.0, "build_jc: rates must be >= 0");

    std::vector<int> dims(n_max + 1, 2);
    dims[0] = 1;
    std::vector<std::string> labels;
    labels.push_back("g,0");
    for (int n = 1; n <= n_max; ++n) {
        labels.push_back("g," + std::to_string(n));
        labels.push_back("e," + std::to_string(n - 1));
    }
    GradedBasis basis(std::move(dims), std::move(labels));

    std::vector<MatrixXcd> hblocks(n_max + 1);
    hblocks[0] = zeros(1, 1);
    for (int n = 1; n <= n_max; ++n) {
        const double gn = g * std::sqrt(static_cast<double>(n));
        hblocks[n] = zeros(2, 2);
        hblocks[n] << 0.0, gn, gn, delta;
    }

    std::vector<MatrixXcd> sm(n_max);
    sm[0] = zeros(1, 2);
    sm[0](0, 1) = 1.0;
    for (int n = 2; n <= n_max; ++n) {
        sm[n - 1] = zeros(2, 2);
        sm[n - 1](0, 1) = 1.0;
    }

    std::vector<MatrixXcd> ab(n_max);
    ab[0] = zeros(1, 2);
    ab[0](0, 0) = 1.0;
    for (int n = 2; n <= n_max; ++n) {
        ab[n - 1] = zeros(2, 2);
        ab[n - 1](0, 0) = std::sqrt(static_cast<double>(n));
        ab[n - 1](1, 1) = std::sqrt(static_cast<double>(n - 1));
    }

    std::vector<MatrixXcd> sz(n_max + 1);
    sz[0] = -MatrixXcd::Identity(1, 1);
    for (int n = 1; n <= n_max; ++n) {
        sz[n] = zeros(2, 2);
        sz[n](0, 0) = -1.0;
        sz[n](1, 1) = 1.0;
    }

    BlockOperator a(OperatorKind::lowering, std::move(ab));
    BlockOperator sigma_minus(OperatorKind::lowering, std::move(sm));
    BlockOperator sigma_z(OperatorKind::conserving, std::move(sz));

    std::vector<LindbladChannel> loss;
    if (kappa > 0.0)
        loss.push_back({kappa, a});
    if (gamma > 0.0)
        loss.push_back({gamma, sigma_minus});

    std::map<std::string, BlockOperator> operators;
    operators.emplace("a", std::move(a));
    operators.emplace("sigma_minus", std::move(sigma_minus));
    operators.emplace("sigma_z", std::move(sigma_z));

    BlockModel model{"jaynes_cummings",
                     std::move(basis),
                     BlockOperator(OperatorKind::conserving, std::move(hblocks)),
                     std::move(loss),
                     {},
                     {{"g", g}, {"delta", delta}, {"kappa", kappa}, {"gamma", gamma}},
                     std::move(operators)};
    model.validate();
    return model;
}

BlockModel build_jc_dephasing(double g, double delta, double kappa, double gamma,
                              double gamma_z, int n_max) {
    require(gamma_z >= 0.0, "build_jc_dephasing: gamma_z must be >= 0");
    BlockModel model = build_jc(g, delta, kappa, gamma, n_max);
    model.name = "jc_dephasing";
    model.params["gamma_z"] = gamma_z;
    // The dissipator gamma_z (sigma_z rho sigma_z - rho) is the generic
    // channel (rate/2)(2 C rho C' - C'C rho - rho C'C) at rate gamma_z,
    // because sigma_z is unitary.
    if (gamma_z > 0.0)
        model.dephasing.push_back({gamma_z, model.named_operator("sigma_z")});
    model.validate();
    return model;
}

BlockModel build_tc2(double g1, double g2, double delta1, double delta2,
                     double gamma1, double gamma2, double kappa, int n_max) {
    require(n_max >= 1, "build_tc2: n_max must be >= 1");
    require(kappa >= 0.0 && gamma1 >= 0.0 && gamma2 >= 0.0,
            "build_tc2: rates must be >= 0");

    // Block n spans |gg,n>, |ge,n-1>, |eg,n-1>, |ee,n-2> where present.
    std::vector<int> dims(n_max + 1, 4);
    dims[0] = 1;
    dims[1] = 3;
    std::vector<std::string> labels;
    labels.push_back("gg,0");
    for (int n = 1; n <= n_max; ++n) {
        labels.push_back("gg," + std::to_string(n));
        labels.push_back("ge," + std::to_string(n - 1));
        labels.push_back("eg," + std::to_string(n - 1));
        if (n >= 2)
            labels.push_back("ee," + std::to_string(n - 2));
    }
    GradedBasis basis(dims, std::move(labels));

    std::vector<MatrixXcd> hblocks(n_max + 1);
    hblocks[0] = zeros(1, 1);
    {
        MatrixXcd h = zeros(3, 3);
        h(0, 1) = g2;
        h(1, 0) = g2;
        h(0, 2) = g1;
        h(2, 0) = g1;
        h(1, 1) = delta2;
        h(2, 2) = delta1;
        hblocks[1] = h;
    }
    for (int n = 2; n <= n_max; ++n) {
        const double rn = std::sqrt(static_cast<double>(n));
        const double rn1 = std::sqrt(static_cast<double>(n - 1));
        MatrixXcd h = zeros(4, 4);
        h(1, 1) = delta2;
        h(2, 2) = delta1;
        h(3, 3) = delta1 + delta2;
        h(0, 1) = g2 * rn;
        h(1, 0) = g2 * rn;
        h(0, 2) = g1 * rn;
        h(2, 0) = g1 * rn;
        h(1, 3) = g1 * rn1;
        h(3, 1) = g1 * rn1;
        h(2, 3) = g2 * rn1;
        h(3, 2) = g2 * rn1;
        hblocks[n] = h;
    }

    std::vector<MatrixXcd> s1(n_max), s2(n_max), ab(n_max);
    s1[0] = zeros(1, 3);
    s1[0](0, 2) = 1.0;
    s2[0] = zeros(1, 3);
    s2[0](0, 1) = 1.0;
    ab[0] = zeros(1, 3);
    ab[0](0, 0) = 1.0;
    for (int n = 2; n <= n_max; ++n) {
        const int rows = dims[n - 1];
        MatrixXcd b1 = zeros(rows, 4);
        b1(0, 2) = 1.0;
        b1(1, 3) = 1.0;
        s1[n - 1] = b1;
        MatrixXcd b2 = zeros(rows, 4);
        b2(0, 1) = 1.0;
        b2(2, 3) = 1.0;
        s2[n - 1] = b2;
        MatrixXcd ba = zeros(rows, 4);
        ba(0, 0) = std::sqrt(static_cast<double>(n));
        ba(1, 1) = std::sqrt(static_cast<double>(n - 1));
        ba(2, 2) = std::sqrt(static_cast<double>(n - 1));
        if (n >= 3)
            ba(3, 3) = std::sqrt(static_cast<double>(n - 2));
        ab[n - 1] = ba;
    }

    auto sz_blocks = [&](int which) {
        std::vector<MatrixXcd> out(n_max + 1);
        out[0] = -MatrixXcd::Identity(1, 1);
        for (int n = 1; n <= n_max; ++n) {
            MatrixXcd b = zeros(dims[n], dims[n]);
            b(0, 0) = -1.0;
            b(1, 1) = which == 2 ? 1.0 : -1.0;
            b(2, 2) = which == 1 ? 1.0 : -1.0;
            if (dims[n] > 3)
                b(3, 3) = 1.0;
            out[n] = b;
        }
        return BlockOperator(OperatorKind::conserving, out);
    };

    BlockOperator a(OperatorKind::lowering, std::move(ab));
    BlockOperator sm1(OperatorKind::lowering, std::move(s1));
    BlockOperator sm2(OperatorKind::lowering, std::move(s2));

    std::vector<LindbladChannel> loss;
    if (kappa > 0.0)
        loss.push_back({kappa, a});
    if (gamma1 > 0.0)
        loss.push_back({gamma1, sm1});
    if (gamma2 > 0.0)
        loss.push_back({gamma2, sm2});

    std::map<std::string, BlockOperator> operators;
    operators.emplace("a", std::move(a));
    operators.emplace("sigma_minus_1", std::move(sm1));
    operators.emplace("sigma_minus_2", std::move(sm2));
    operators.emplace("sigma_z_1", sz_blocks(1));
    operators.emplace("sigma_z_2", sz_blocks(2));

    BlockModel model{"tavis_cummings_2",
                     std::move(basis),
                     BlockOperator(OperatorKind::conserving, std::move(hblocks)),
                     std::move(loss),
                     {},
                     {{"g1", g1},
                      {"g2", g2},
                      {"delta1", delta1},
                      {"delta2", delta2},
                      {"gamma1", gamma1},
                      {"gamma2", gamma2},
                      {"kappa", kappa}},
                     std::move(operators)};
    model.validate();
    return model;
}

BlockModel build_spin_model(const SpinSystem& sys) { return build_spin_generic(sys, nullptr); }

BlockModel build_spin_cavity_model(const SpinSystem& sys, const CavityCoupling& cav) {
    return build_spin_generic(sys, &cav);
}

} // namespace lindblad

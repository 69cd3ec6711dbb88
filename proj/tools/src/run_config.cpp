#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "lindblad/models.hpp"

namespace lindblad::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kModels = {"jaynes_cummings", "jc_dephasing",
                                       "tavis_cummings_2", "spin_chain",
                                       "spins_oscillator"};

struct ParamSpec {
    std::set<std::string> required;
    std::set<std::string> optional;
};

ParamSpec param_spec(const std::string& model) {
    if (model == "jaynes_cummings")
        return {{"g", "delta", "kappa", "gamma"}, {}};
    if (model == "jc_dephasing")
        return {{"g", "delta", "kappa", "gamma", "gamma_z"}, {}};
    if (model == "tavis_cummings_2")
        return {{"g1", "g2", "delta1", "delta2", "gamma1", "gamma2", "kappa"}, {}};
    if (model == "spin_chain")
        return {{"M", "gamma"}, {"J", "eta", "delta", "gamma_z"}};
    if (model == "spins_oscillator")
        return {{"M", "g", "delta", "kappa", "gamma"}, {"J", "eta", "gamma_z"}};
    throw ConfigError("unknown model '" + model + "'");
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError("key '" + key + "' in " + where + " must be a number");
    return v.get<double>();
}

int spin_count(const RunConfig& config) {
    const double m = config.params.at("M");
    if (m < 1.0 || m != std::floor(m))
        throw ConfigError("parameter M must be a positive integer");
    return static_cast<int>(m);
}

// Nearest-neighbor chain couplings of uniform strength.
Eigen::MatrixXd chain_coupling(int M, double strength) {
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(M, M);
    for (int l = 0; l + 1 < M; ++l) {
        mat(l, l + 1) = strength;
        mat(l + 1, l) = strength;
    }
    return mat;
}

double param_or(const RunConfig& config, const std::string& key, double fallback) {
    auto it = config.params.find(key);
    return it == config.params.end() ? fallback : it->second;
}

SpinSystem make_spin_system(const RunConfig& config) {
    const int M = spin_count(config);
    SpinSystem sys;
    sys.num_spins = M;
    sys.delta.assign(M, param_or(config, "delta", 0.0));
    sys.gamma.assign(M, config.params.at("gamma"));
    const double gz = param_or(config, "gamma_z", 0.0);
    if (gz > 0.0)
        sys.gamma_z.assign(M, gz);
    sys.J = chain_coupling(M, param_or(config, "J", 0.0));
    sys.eta = chain_coupling(M, param_or(config, "eta", 0.0));
    return sys;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("config must be a JSON object");
    check_keys(root,
               {"model", "cutoff", "params", "tolerances", "output", "initial", "probe"},
               "config");

    RunConfig config;
    if (!root.contains("model") || !root.at("model").is_string())
        throw ConfigError("config needs a string key 'model'");
    config.model = root.at("model").get<std::string>();
    if (!kModels.count(config.model))
        throw ConfigError("unknown model '" + config.model + "'");

    if (!root.contains("cutoff") || !root.at("cutoff").is_number_integer())
        throw ConfigError("config needs an integer key 'cutoff'");
    config.cutoff = root.at("cutoff").get<int>();
    if (config.cutoff < 1)
        throw ConfigError("cutoff must be >= 1");

    if (!root.contains("params") || !root.at("params").is_object())
        throw ConfigError("config needs an object key 'params'");
    const ParamSpec spec = param_spec(config.model);
    std::set<std::string> allowed = spec.required;
    allowed.insert(spec.optional.begin(), spec.optional.end());
    check_keys(root.at("params"), allowed, "params");
    for (const auto& key : spec.required)
        if (!root.at("params").contains(key))
            throw ConfigError("model '" + config.model + "' needs parameter '" + key + "'");
    for (const auto& item : root.at("params").items())
        config.params[item.key()] = get_number(root.at("params"), item.key(), "params");

    if (root.contains("tolerances")) {
        const auto& tol = root.at("tolerances");
        if (!tol.is_object())
            throw ConfigError("'tolerances' must be an object");
        check_keys(tol, {"degeneracy", "resonance", "residual"}, "tolerances");
        if (tol.contains("degeneracy"))
            config.tolerances.degeneracy_tol = get_number(tol, "degeneracy", "tolerances");
        if (tol.contains("resonance"))
            config.tolerances.resonance_tol = get_number(tol, "resonance", "tolerances");
        if (tol.contains("residual"))
            config.residual_tol = get_number(tol, "residual", "tolerances");
        if (config.tolerances.degeneracy_tol <= 0.0 ||
            config.tolerances.resonance_tol <= 0.0 || config.residual_tol <= 0.0)
            throw ConfigError("tolerances must be positive");
    }

    if (root.contains("output")) {
        const auto& out = root.at("output");
        if (!out.is_object())
            throw ConfigError("'output' must be an object");
        check_keys(out, {"path", "format"}, "output");
        if (out.contains("path")) {
            if (!out.at("path").is_string())
                throw ConfigError("output path must be a string");
            config.output_path = out.at("path").get<std::string>();
        }
        if (out.contains("format")) {
            if (!out.at("format").is_string())
                throw ConfigError("output format must be a string");
            config.output_format = out.at("format").get<std::string>();
            if (config.output_format != "json" && config.output_format != "csv")
                throw ConfigError("output format must be 'json' or 'csv'");
        }
    }

    if (root.contains("initial")) {
        if (!root.at("initial").is_string())
            throw ConfigError("'initial' must be a string");
        config.initial = root.at("initial").get<std::string>();
    }
    if (root.contains("probe")) {
        if (!root.at("probe").is_string())
            throw ConfigError("'probe' must be a string");
        config.probe = root.at("probe").get<std::string>();
    }

    if (config.model == "spin_chain") {
        const int M = spin_count(config);
        if (config.cutoff != M)
            throw ConfigError("spin_chain: cutoff must equal M");
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

BlockModel build_model(const RunConfig& config) {
    try {
        const auto& p = config.params;
        if (config.model == "jaynes_cummings")
            return build_jc(p.at("g"), p.at("delta"), p.at("kappa"), p.at("gamma"),
                            config.cutoff);
        if (config.model == "jc_dephasing")
            return build_jc_dephasing(p.at("g"), p.at("delta"), p.at("kappa"),
                                      p.at("gamma"), p.at("gamma_z"), config.cutoff);
        if (config.model == "tavis_cummings_2")
            return build_tc2(p.at("g1"), p.at("g2"), p.at("delta1"), p.at("delta2"),
                             p.at("gamma1"), p.at("gamma2"), p.at("kappa"),
                             config.cutoff);
        if (config.model == "spin_chain") {
            BlockModel model = build_spin_model(make_spin_system(config));
            model.name = "spin_chain";
            model.params = config.params;
            return model;
        }
        if (config.model == "spins_oscillator") {
            const SpinSystem sys = make_spin_system(config);
            CavityCoupling cav;
            cav.g.assign(sys.num_spins, config.params.at("g"));
            cav.kappa = config.params.at("kappa");
            cav.cutoff = config.cutoff;
            BlockModel model = build_spin_cavity_model(sys, cav);
            model.name = "spins_oscillator";
            model.params = config.params;
            return model;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown model '" + config.model + "'");
}

std::string default_probe(const BlockModel& model) {
    if (model.operators.count("sigma_minus"))
        return "sigma_minus";
    if (model.operators.count("sigma_minus_1"))
        return "sigma_minus_1";
    throw ConfigError("model has no default probe operator");
}

Eigen::MatrixXcd initial_state(const BlockModel& model, const std::string& name) {
    const GradedBasis& basis = model.basis;
    int n = -1;
    int j = -1;
    if (name == "ground") {
        n = 0;
        j = 1;
    } else if (name == "excited_atom") {
        n = 1;
        j = 2;
    } else {
        const auto comma = name.find(',');
        if (comma == std::string::npos)
            throw ConfigError("unknown initial state '" + name + "'");
        try {
            n = std::stoi(name.substr(0, comma));
            j = std::stoi(name.substr(comma + 1));
        } catch (const std::exception&) {
            throw ConfigError("unknown initial state '" + name + "'");
        }
    }
    int index = 0;
    try {
        index = basis.state_index(n, j);
    } catch (const std::out_of_range&) {
        throw ConfigError("initial state '" + name + "' is outside the basis");
    }
    Eigen::MatrixXcd rho =
        Eigen::MatrixXcd::Zero(basis.total_dimension(), basis.total_dimension());
    rho(index, index) = 1.0;
    return rho;
}

} // namespace lindblad::cli

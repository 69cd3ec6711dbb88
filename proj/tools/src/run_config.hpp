#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "lindblad/block_operator.hpp"
#include "lindblad/spectral_solver.hpp"

namespace lindblad::cli {

// A malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string model;
    std::map<std::string, double> params;
    int cutoff = 0;
    SolverOptions tolerances;
    double residual_tol = 1e-8;
    std::string initial = "excited_atom"; // default initial state name
    std::string probe;                    // empty: model default
    std::string output_path;              // empty: command line must supply one
    std::string output_format;            // empty: decided by the command
};

// Parses and validates a JSON config file. Unknown keys and unknown or
// missing model parameters raise ConfigError.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

// Instantiates the configured model.
BlockModel build_model(const RunConfig& config);

// Model default emission probe: "sigma_minus" when present, else
// "sigma_minus_1".
std::string default_probe(const BlockModel& model);

// Named initial states: "ground" (|0,1><0,1|), "excited_atom" (|1,2><1,2|)
// or an explicit projector "n,j". Raises ConfigError for unknown names.
Eigen::MatrixXcd initial_state(const BlockModel& model, const std::string& name);

} // namespace lindblad::cli

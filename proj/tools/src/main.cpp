#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spectral solver for gain-free Lindblad master equations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string initial;
    double omega_min = -5.0;
    double omega_max = 5.0;
    int points = 201;
    double t_max = 10.0;
    int steps = 100;

    CLI::App* solve = app.add_subcommand("solve", "Write all Liouvillian eigenvalues");
    solve->add_option("--config", config_path, "JSON model config")->required();
    solve->add_option("--out", out_path, "Output JSON file");

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "Emission spectrum on a frequency grid");
    spectrum->add_option("--config", config_path, "JSON model config")->required();
    spectrum->add_option("--omega-min", omega_min, "Lower edge of the grid")->required();
    spectrum->add_option("--omega-max", omega_max, "Upper edge of the grid")->required();
    spectrum->add_option("--points", points, "Number of grid points")->required();
    spectrum->add_option("--out", out_path, "Output CSV file");

    CLI::App* evolve = app.add_subcommand("evolve", "Observables along the evolution");
    evolve->add_option("--config", config_path, "JSON model config")->required();
    evolve->add_option("--initial", initial, "Initial state name");
    evolve->add_option("--t-max", t_max, "Final time")->required();
    evolve->add_option("--steps", steps, "Number of time steps")->required();
    evolve->add_option("--out", out_path, "Output CSV file");

    CLI::App* verify = app.add_subcommand("verify", "Cross-check against the dense oracle");
    verify->add_option("--config", config_path, "JSON model config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return lindblad::cli::kExitConfig;
    }

    if (solve->parsed())
        return lindblad::cli::cmd_solve(config_path, out_path);
    if (spectrum->parsed())
        return lindblad::cli::cmd_spectrum(config_path, omega_min, omega_max, points,
                                           out_path);
    if (evolve->parsed())
        return lindblad::cli::cmd_evolve(config_path, initial, t_max, steps, out_path);
    if (verify->parsed())
        return lindblad::cli::cmd_verify(config_path);
    return lindblad::cli::kExitConfig;
}

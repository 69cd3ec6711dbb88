#pragma once

#include <string>

namespace lindblad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDivergent = 3;
inline constexpr int kExitSizeGuard = 4;

// Each command loads the config, runs, writes its output and returns the
// process exit code. An empty out_path or initial falls back to the config.
int cmd_solve(const std::string& config_path, const std::string& out_path);
int cmd_spectrum(const std::string& config_path, double omega_min, double omega_max,
                 int points, const std::string& out_path);
int cmd_evolve(const std::string& config_path, const std::string& initial, double t_max,
               int steps, const std::string& out_path);
int cmd_verify(const std::string& config_path);

} // namespace lindblad::cli

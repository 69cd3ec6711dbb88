#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <vector>

#include "json.hpp"
#include "lindblad/dynamics.hpp"
#include "lindblad/errors.hpp"
#include "lindblad/oracle.hpp"
#include "lindblad/spectral_solver.hpp"
#include "run_config.hpp"

namespace lindblad::cli {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename F>
int run_guarded(F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DegenerateBlockError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ResonanceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DivergentSpectrumError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergent;
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSizeGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

std::string resolve_output(const RunConfig& config, const std::string& out_path) {
    if (!out_path.empty())
        return out_path;
    if (!config.output_path.empty())
        return config.output_path;
    throw ConfigError("no output path given (use --out or config output.path)");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write to '" + path + "'");
    out << content;
}

// Eigen elements including adjoint partners, in enumeration order.
struct ElementList {
    std::vector<std::complex<double>> lambda;
    std::vector<Eigen::MatrixXcd> right;
    std::vector<Eigen::MatrixXcd> left;
};

ElementList collect(const LiouvilleEigensystem& eig) {
    ElementList el;
    eig.for_each_eigenvalue(
        [&](std::complex<double> lambda, const LiouvilleEigenpair& p, bool adjoint) {
            el.lambda.push_back(lambda);
            el.right.push_back(adjoint ? Eigen::MatrixXcd(p.right.adjoint()) : p.right);
            el.left.push_back(adjoint ? Eigen::MatrixXcd(p.left.adjoint()) : p.left);
        });
    return el;
}

const BlockOperator& resolve_probe(const RunConfig& config, const BlockModel& model) {
    const std::string name = config.probe.empty() ? default_probe(model) : config.probe;
    return model.named_operator(name);
}

} // namespace

int cmd_solve(const std::string& config_path, const std::string& out_path) {
    return run_guarded([&] {
        const RunConfig config = load_config(config_path);
        const std::string out = resolve_output(config, out_path);
        const BlockModel model = build_model(config);
        const LiouvilleEigensystem eig = full_eigensystem(model, config.tolerances);

        json records = json::array();
        for (const auto& p : eig.pairs()) {
            const auto [j, k] = unflatten_pair(p.mu, model.basis.block_dim(p.m));
            records.push_back({{"l", p.l},
                               {"m", p.m},
                               {"j", j},
                               {"k", k},
                               {"lambda_re", p.lambda.real()},
                               {"lambda_im", p.lambda.imag()},
                               {"adjoint", false}});
            if (p.l > 0)
                records.push_back({{"l", p.l},
                                   {"m", p.m},
                                   {"j", j},
                                   {"k", k},
                                   {"lambda_re", p.lambda.real()},
                                   {"lambda_im", -p.lambda.imag()},
                                   {"adjoint", true}});
        }
        json doc = {{"model", model.name},
                    {"total_dimension", model.basis.total_dimension()},
                    {"eigenvalue_count", eig.total_count()},
                    {"eigenvalues", records}};
        write_file(out, doc.dump(2) + "\n");
        return kExitOk;
    });
}

int cmd_spectrum(const std::string& config_path, double omega_min, double omega_max,
                 int points, const std::string& out_path) {
    return run_guarded([&] {
        const RunConfig config = load_config(config_path);
        const std::string out = resolve_output(config, out_path);
        if (points < 2)
            throw ConfigError("spectrum needs at least 2 points");
        if (!(omega_max > omega_min))
            throw ConfigError("omega-max must exceed omega-min");
        const BlockModel model = build_model(config);
        const LiouvilleEigensystem eig = full_eigensystem(model, config.tolerances);
        const Eigen::MatrixXcd rho0 = initial_state(model, config.initial);
        const Eigen::VectorXd omega =
            Eigen::VectorXd::LinSpaced(points, omega_min, omega_max);
        const SpectrumResult spec = emission_spectrum(eig, rho0, omega, resolve_probe(config, model));

        std::string csv = "omega,s,S\n";
        for (int i = 0; i < omega.size(); ++i)
            csv += format_double(spec.omega(i)) + "," + format_double(spec.s(i)) + "," +
                   format_double(spec.S(i)) + "\n";
        write_file(out, csv);
        std::cout << "varsigma = " << format_double(spec.varsigma) << "\n";
        return kExitOk;
    });
}

int cmd_evolve(const std::string& config_path, const std::string& initial, double t_max,
               int steps, const std::string& out_path) {
    return run_guarded([&] {
        const RunConfig config = load_config(config_path);
        const std::string out = resolve_output(config, out_path);
        if (steps < 1)
            throw ConfigError("evolve needs steps >= 1");
        if (!(t_max >= 0.0))
            throw ConfigError("t-max must be >= 0");
        const BlockModel model = build_model(config);
        const LiouvilleEigensystem eig = full_eigensystem(model, config.tolerances);
        const std::string initial_name = initial.empty() ? config.initial : initial;
        const Eigen::MatrixXcd rho0 = initial_state(model, initial_name);

        std::vector<double> times;
        if (t_max == 0.0)
            times.push_back(0.0);
        else
            for (int i = 0; i <= steps; ++i)
                times.push_back(t_max * i / steps);

        const GradedBasis& basis = model.basis;
        std::string csv = "t,trace,purity";
        for (int n = 0; n <= basis.max_excitation(); ++n)
            for (int j = 1; j <= basis.block_dim(n); ++j)
                csv += ",pop_" + std::to_string(n) + "_" + std::to_string(j);
        csv += "\n";

        for (double t : times) {
            const Eigen::MatrixXcd rho = evolve(eig, rho0, t);
            csv += format_double(t);
            csv += "," + format_double(rho.trace().real());
            csv += "," + format_double((rho * rho).trace().real());
            for (int n = 0; n <= basis.max_excitation(); ++n)
                for (int j = 1; j <= basis.block_dim(n); ++j) {
                    const int idx = basis.state_index(n, j);
                    csv += "," + format_double(rho(idx, idx).real());
                }
            csv += "\n";
        }
        write_file(out, csv);
        return kExitOk;
    });
}

int cmd_verify(const std::string& config_path) {
    return run_guarded([&] {
        const RunConfig config = load_config(config_path);
        const BlockModel model = build_model(config);
        const DenseSuperoperator dense = dense_liouvillian(model);
        const LiouvilleEigensystem eig = full_eigensystem(model, config.tolerances);
        const ElementList el = collect(eig);
        const int count = static_cast<int>(el.lambda.size());

        bool all_pass = true;
        auto report = [&](const std::string& name, bool pass, const std::string& detail) {
            std::cout << name << ": " << (pass ? "PASS" : "FAIL") << " (" << detail
                      << ")\n";
            all_pass = all_pass && pass;
        };

        // Eigenvalue multiset match against the dense spectrum.
        {
            const DenseEigensystem ds = dense_eigensystem(dense);
            std::vector<bool> used(ds.eigenvalues.size(), false);
            double worst = 0.0;
            for (int a = 0; a < count; ++a) {
                int best = -1;
                double best_dist = 0.0;
                for (int b = 0; b < ds.eigenvalues.size(); ++b) {
                    if (used[b])
                        continue;
                    const double dist = std::abs(el.lambda[a] - ds.eigenvalues(b));
                    if (best < 0 || dist < best_dist) {
                        best = b;
                        best_dist = dist;
                    }
                }
                used[best] = true;
                worst = std::max(worst, best_dist);
            }
            report("spectrum_match", worst < 1e-8,
                   "max eigenvalue mismatch " + format_double(worst));
        }

        // Oracle residuals of every right and left eigenpair.
        {
            double worst = 0.0;
            for (int a = 0; a < count; ++a) {
                worst = std::max(worst, eigenpair_residual(dense, el.lambda[a],
                                                           el.right[a], EigenSide::right));
                worst = std::max(worst, eigenpair_residual(dense, el.lambda[a],
                                                           el.left[a], EigenSide::left));
            }
            report("residuals", worst < config.residual_tol,
                   "max residual " + format_double(worst) + ", tolerance " +
                       format_double(config.residual_tol));
        }

        // Biorthonormality of the left/right families.
        {
            double worst = 0.0;
            for (int a = 0; a < count; ++a)
                for (int b = 0; b < count; ++b) {
                    const std::complex<double> overlap =
                        (el.left[a].conjugate().cwiseProduct(el.right[b])).sum();
                    const double target = a == b ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(overlap - target));
                }
            report("biorthonormality", worst < 1e-8,
                   "max pairing error " + format_double(worst));
        }

        // Completeness: reconstruct a reproducible random state.
        {
            std::mt19937 gen(918273);
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            const int total = model.basis.total_dimension();
            Eigen::MatrixXcd a(total, total);
            for (int r = 0; r < total; ++r)
                for (int c = 0; c < total; ++c)
                    a(r, c) = std::complex<double>(dist(gen), dist(gen));
            Eigen::MatrixXcd rho = a * a.adjoint();
            rho /= rho.trace();

            Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(total, total);
            for (int e = 0; e < count; ++e)
                rebuilt += (el.left[e].conjugate().cwiseProduct(rho)).sum() * el.right[e];
            const double worst = (rebuilt - rho).cwiseAbs().maxCoeff();
            report("completeness", worst < 1e-8,
                   "max reconstruction error " + format_double(worst));
        }

        // Spectral evolution against the matrix exponential.
        {
            const Eigen::MatrixXcd rho0 = initial_state(model, config.initial);
            double worst_dist = 0.0;
            double worst_trace = 0.0;
            for (double t : {0.1, 1.0, 10.0}) {
                const Eigen::MatrixXcd spectral = evolve(eig, rho0, t);
                const Eigen::MatrixXcd brute = dense_propagate(dense, rho0, t);
                worst_dist = std::max(worst_dist, trace_distance(spectral, brute));
                worst_trace =
                    std::max(worst_trace, std::abs(spectral.trace() - 1.0));
            }
            report("evolution_match", worst_dist < 1e-7 && worst_trace < 1e-10,
                   "max trace distance " + format_double(worst_dist) +
                       ", max trace error " + format_double(worst_trace));
        }

        return all_pass ? kExitOk : kExitVerifyFailed;
    });
}

} // namespace lindblad::cli

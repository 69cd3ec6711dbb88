#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "run_config.hpp"

using namespace lindblad;
using namespace lindblad::cli;
namespace fs = std::filesystem;

namespace {

const std::string kGoodConfig = R"({
  "model": "jaynes_cummings",
  "cutoff": 2,
  "params": {"g": 1.0, "delta": 0.3, "kappa": 0.5, "gamma": 0.2}
})";

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "lindblad_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path path = scratch_dir() / name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_cli(const std::string& args, const fs::path& stdout_path = {}) {
    std::string cmd = std::string(LINDBLAD_CLI_PATH) + " " + args;
    if (!stdout_path.empty())
        cmd += " > " + stdout_path.string() + " 2>&1";
    else
        cmd += " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

int count_lines_with(const std::string& text, const std::string& needle) {
    int count = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.find(needle) != std::string::npos)
            ++count;
    return count;
}

} // namespace

TEST_CASE("config parsing fills defaults") {
    const RunConfig config = parse_config(kGoodConfig);
    CHECK(config.model == "jaynes_cummings");
    CHECK(config.cutoff == 2);
    CHECK(config.params.at("g") == 1.0);
    CHECK(config.params.at("delta") == 0.3);
    CHECK(config.initial == "excited_atom");
    CHECK(config.probe.empty());
    CHECK(config.output_path.empty());
    CHECK(config.residual_tol == 1e-8);
    CHECK(config.tolerances.degeneracy_tol == 1e-9);
    CHECK(config.tolerances.resonance_tol == 1e-9);
}

TEST_CASE("config parsing honors explicit settings") {
    const RunConfig config = parse_config(R"({
      "model": "jc_dephasing",
      "cutoff": 3,
      "params": {"g": 1.0, "delta": 0.0, "kappa": 0.5, "gamma": 0.2, "gamma_z": 0.15},
      "tolerances": {"degeneracy": 1e-8, "resonance": 1e-7, "residual": 1e-6},
      "initial": "ground",
      "probe": "a",
      "output": {"path": "out.json", "format": "json"}
    })");
    CHECK(config.tolerances.degeneracy_tol == 1e-8);
    CHECK(config.tolerances.resonance_tol == 1e-7);
    CHECK(config.residual_tol == 1e-6);
    CHECK(config.initial == "ground");
    CHECK(config.probe == "a");
    CHECK(config.output_path == "out.json");
    CHECK(config.output_format == "json");
}

TEST_CASE("config parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("{}"), ConfigError);

    // Unknown model.
    CHECK_THROWS_AS(parse_config(R"({"model": "unknown", "cutoff": 2,
        "params": {}})"),
                    ConfigError);
    // Unknown top-level key.
    CHECK_THROWS_AS(parse_config(R"({"model": "jaynes_cummings", "cutoff": 2,
        "params": {"g": 1, "delta": 0, "kappa": 1, "gamma": 1}, "extra": 1})"),
                    ConfigError);
    // Unknown parameter.
    CHECK_THROWS_AS(parse_config(R"({"model": "jaynes_cummings", "cutoff": 2,
        "params": {"g": 1, "delta": 0, "kappa": 1, "gamma": 1, "bogus": 2}})"),
                    ConfigError);
    // Missing required parameter.
    CHECK_THROWS_AS(parse_config(R"({"model": "jaynes_cummings", "cutoff": 2,
        "params": {"g": 1, "delta": 0, "kappa": 1}})"),
                    ConfigError);
    // Cutoff must be positive.
    CHECK_THROWS_AS(parse_config(R"({"model": "jaynes_cummings", "cutoff": 0,
        "params": {"g": 1, "delta": 0, "kappa": 1, "gamma": 1}})"),
                    ConfigError);
    // Tolerances must be positive.
    CHECK_THROWS_AS(parse_config(R"({"model": "jaynes_cummings", "cutoff": 2,
        "params": {"g": 1, "delta": 0, "kappa": 1, "gamma": 1},
        "tolerances": {"degeneracy": 0}})"),
                    ConfigError);
    // Unknown output format.
    CHECK_THROWS_AS(parse_config(R"({"model": "jaynes_cummings", "cutoff": 2,
        "params": {"g": 1, "delta": 0, "kappa": 1, "gamma": 1},
        "output": {"path": "x", "format": "xml"}})"),
                    ConfigError);
}

TEST_CASE("spin-chain configs pin the cutoff to the spin count") {
    const std::string text = R"({
      "model": "spin_chain",
      "cutoff": %C%,
      "params": {"M": 3, "gamma": 0.2, "J": 0.1, "eta": 0.3}
    })";
    auto with_cutoff = [&](const std::string& c) {
        std::string t = text;
        t.replace(t.find("%C%"), 3, c);
        return t;
    };
    CHECK_NOTHROW(parse_config(with_cutoff("3")));
    CHECK_THROWS_AS(parse_config(with_cutoff("2")), ConfigError);
}

TEST_CASE("configured models are built and named") {
    const RunConfig config = parse_config(kGoodConfig);
    const BlockModel model = build_model(config);
    CHECK(model.name == "jaynes_cummings");
    CHECK(model.basis.max_excitation() == 2);
    CHECK(model.params.at("g") == 1.0);
    CHECK(default_probe(model) == "sigma_minus");

    const RunConfig tc = parse_config(R"({
      "model": "tavis_cummings_2",
      "cutoff": 2,
      "params": {"g1": 1.0, "g2": 1.3, "delta1": 0.2, "delta2": -0.4,
                 "gamma1": 0.3, "gamma2": 0.45, "kappa": 0.6}
    })");
    const BlockModel tc_model = build_model(tc);
    CHECK(tc_model.basis.dims() == std::vector<int>{1, 3, 4});
    CHECK(default_probe(tc_model) == "sigma_minus_1");
}

TEST_CASE("named initial states") {
    const BlockModel model = build_model(parse_config(kGoodConfig));
    const int total = model.basis.total_dimension();

    const Eigen::MatrixXcd ground = initial_state(model, "ground");
    CHECK(std::abs(ground(0, 0) - 1.0) == 0.0);
    CHECK(std::abs(ground.trace() - 1.0) <= 1e-15);

    const Eigen::MatrixXcd excited = initial_state(model, "excited_atom");
    const int idx = model.basis.state_index(1, 2);
    CHECK(std::abs(excited(idx, idx) - 1.0) == 0.0);

    const Eigen::MatrixXcd explicit_state = initial_state(model, "2,1");
    CHECK(std::abs(explicit_state(model.basis.state_index(2, 1),
                                  model.basis.state_index(2, 1)) -
                   1.0) == 0.0);
    CHECK(explicit_state.rows() == total);

    CHECK_THROWS_AS(initial_state(model, "nonsense"), ConfigError);
    CHECK_THROWS_AS(initial_state(model, "9,1"), ConfigError);
    CHECK_THROWS_AS(initial_state(model, "1,3"), ConfigError);
}

TEST_CASE("solve command output is deterministic and complete") {
    const fs::path config = write_file("good.json", kGoodConfig);
    const fs::path out_a = scratch_dir() / "solve_a.json";
    const fs::path out_b = scratch_dir() / "solve_b.json";

    REQUIRE(run_cli("solve --config " + config.string() + " --out " + out_a.string()) ==
            0);
    REQUIRE(run_cli("solve --config " + config.string() + " --out " + out_b.string()) ==
            0);

    const std::string text_a = read_file(out_a);
    CHECK(text_a == read_file(out_b));

    const auto doc = nlohmann::json::parse(text_a);
    CHECK(doc.at("model") == "jaynes_cummings");
    CHECK(doc.at("total_dimension") == 5);
    CHECK(doc.at("eigenvalue_count") == 25);
    CHECK(doc.at("eigenvalues").size() == 25);

    int zeros = 0;
    for (const auto& entry : doc.at("eigenvalues")) {
        const double re = entry.at("lambda_re").get<double>();
        const double im = entry.at("lambda_im").get<double>();
        CHECK(re <= 1e-10);
        if (std::abs(re) < 1e-10 && std::abs(im) < 1e-10)
            ++zeros;
    }
    CHECK(zeros == 1);
}

TEST_CASE("spectrum command writes one row per frequency") {
    const fs::path config = write_file("good.json", kGoodConfig);
    const fs::path out = scratch_dir() / "spectrum.csv";
    REQUIRE(run_cli("spectrum --config " + config.string() +
                    " --omega-min -1 --omega-max 1 --points 2 --out " + out.string()) ==
            0);

    const std::string text = read_file(out);
    CHECK(count_lines_with(text, "omega") == 1);
    CHECK(count_lines_with(text, ",") == 3); // header plus two data rows
}

TEST_CASE("evolve command handles the degenerate time grid") {
    const fs::path config = write_file("good.json", kGoodConfig);
    const fs::path out = scratch_dir() / "evolve.csv";
    REQUIRE(run_cli("evolve --config " + config.string() +
                    " --t-max 0 --steps 5 --out " + out.string()) == 0);
    const std::string text = read_file(out);
    CHECK(count_lines_with(text, ",") == 2); // header plus the t = 0 row

    const fs::path out2 = scratch_dir() / "evolve2.csv";
    REQUIRE(run_cli("evolve --config " + config.string() +
                    " --t-max 2 --steps 4 --out " + out2.string()) == 0);
    CHECK(count_lines_with(read_file(out2), ",") == 6);
}

TEST_CASE("verify command reports all five checks") {
    const fs::path config = write_file("good.json", kGoodConfig);
    const fs::path log = scratch_dir() / "verify.log";
    REQUIRE(run_cli("verify --config " + config.string(), log) == 0);
    const std::string text = read_file(log);
    CHECK(count_lines_with(text, ": PASS") == 5);
    CHECK(count_lines_with(text, ": FAIL") == 0);
}

TEST_CASE("error exit codes") {
    // Configuration problems exit with 2.
    CHECK(run_cli("solve --config /nonexistent.json --out /tmp/x.json") == 2);
    const fs::path bad = write_file("bad.json", "{\"model\": 3}");
    CHECK(run_cli("solve --config " + bad.string() + " --out /tmp/x.json") == 2);

    // A degenerate effective block also maps to exit 2.
    const fs::path degenerate = write_file("degenerate.json", R"({
      "model": "jaynes_cummings",
      "cutoff": 2,
      "params": {"g": 1.0, "delta": 0.0, "kappa": 5.0, "gamma": 1.0}
    })");
    CHECK(run_cli("solve --config " + degenerate.string() + " --out /tmp/x.json") == 2);

    // The dense verify oracle refuses oversized problems with 4.
    const fs::path large = write_file("large.json", R"({
      "model": "spin_chain",
      "cutoff": 7,
      "params": {"M": 7, "gamma": 0.2}
    })");
    CHECK(run_cli("verify --config " + large.string()) == 4);

    // Command-line misuse.
    CHECK(run_cli("") != 0);
    CHECK(run_cli("solve") != 0);
    CHECK(run_cli("bogus --config x") != 0);

    // No output path anywhere.
    const fs::path good = write_file("good.json", kGoodConfig);
    CHECK(run_cli("solve --config " + good.string()) == 2);
}

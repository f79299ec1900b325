#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code = -1;
};

CliRun run_cli(const std::string& args) {
    std::string cmd = std::string(BNF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream os(p);
    os << text;
    return p;
}

const char* kValid = R"({
  "lattice": {"theta": 1, "J": 3},
  "potential": {"m": 1.0, "seed": 11},
  "nonlinearity": {"terms": [
    {"a": 3, "b": 1, "x_modes": [[0, [1.0, 0.0]]]},
    {"a": 1, "b": 3, "x_modes": [[0, [1.0, 0.0]]]}
  ]},
  "nf": {"gamma": 0.01, "alpha": 2.0, "N": 3, "r_star": 1, "p": 3.0},
  "integrate": {"dt": 0.01, "T": 1.0},
  "experiment": {"kind": "scan", "seed": 5, "r": 4, "epsilon": 0.01,
                 "ladder": [0.4, 0.2, 0.1, 0.05], "n_states": 10}
})";

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    return std::string((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("cli pipeline smoke") {
    fs::path dir = fs::temp_directory_path() / "bnf_cli_test";
    fs::remove_all(dir);
    fs::path cfg = write_config(dir, "config.json", kValid);

    // build writes the hamiltonian dir and the structure report
    CHECK(run_cli("build --config " + cfg.string() + " --out " + (dir / "ham").string())
              .exit_code == 0);
    CHECK(fs::exists(dir / "ham" / "P.jsonl"));
    CHECK(fs::exists(dir / "ham" / "frequencies.csv"));
    CHECK(fs::exists(dir / "ham" / "structure_report.json"));

    // normal form from the stored hamiltonian
    CHECK(run_cli("normalform --config " + cfg.string() + " --hamiltonian " +
                  (dir / "ham").string() + " --out " + (dir / "nf").string())
              .exit_code == 0);
    CHECK(fs::exists(dir / "nf" / "Z.jsonl"));
    CHECK(fs::exists(dir / "nf" / "S_0.jsonl"));
    CHECK(fs::exists(dir / "nf" / "S_1.jsonl"));
    CHECK(fs::exists(dir / "nf" / "diagnostics.json"));

    // certificates pass
    CHECK(run_cli("verify --config " + cfg.string() + " --hamiltonian " + (dir / "ham").string() +
                  " --normalform " + (dir / "nf").string())
              .exit_code == 0);

    // scan: gamma small enough that the sampled potential is non-resonant
    CHECK(run_cli("scan --config " + cfg.string() + " --out " + (dir / "scan.json").string())
              .exit_code == 0);
    CHECK(slurp(dir / "scan.json").find("\"non_resonant\": true") != std::string::npos);

    // scaling emits byte-identical CSV on a rerun
    CHECK(run_cli("scaling --config " + cfg.string() + " --normalform " + (dir / "nf").string() +
                  " --out-csv " + (dir / "s1.csv").string() + " --out-json " +
                  (dir / "s1.json").string())
              .exit_code == 0);
    CHECK(run_cli("scaling --config " + cfg.string() + " --normalform " + (dir / "nf").string() +
                  " --out-csv " + (dir / "s2.csv").string())
              .exit_code == 0);
    CHECK(slurp(dir / "s1.csv") == slurp(dir / "s2.csv"));

    // simulate writes the trajectory CSV
    CHECK(run_cli("simulate --config " + cfg.string() + " --out-csv " +
                  (dir / "traj.csv").string())
              .exit_code == 0);
    std::string traj = slurp(dir / "traj.csv");
    CHECK(traj.find("t,norm_p,H,momentum") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("cli config errors exit 2") {
    fs::path dir = fs::temp_directory_path() / "bnf_cli_test_err";
    fs::remove_all(dir);

    // theta=1 with include_zero
    fs::path bad1 = write_config(dir, "bad1.json", R"({
      "lattice": {"theta": 1, "J": 3, "include_zero": true},
      "potential": {"m": 1.0, "seed": 1},
      "nonlinearity": {"terms": []},
      "nf": {"gamma": 0.1, "alpha": 2.0, "N": 2, "r_star": 1, "p": 3.0}
    })");
    CHECK(run_cli("build --config " + bad1.string() + " --out " + (dir / "h").string())
              .exit_code == 2);

    // reality-violating nonlinearity
    fs::path bad2 = write_config(dir, "bad2.json", R"({
      "lattice": {"theta": 0, "J": 3},
      "potential": {"m": 1.0, "seed": 1},
      "nonlinearity": {"terms": [{"a": 2, "b": 1, "x_modes": [[1, [1.0, 0.0]]]}]},
      "nf": {"gamma": 0.1, "alpha": 2.0, "N": 2, "r_star": 1, "p": 3.0}
    })");
    CHECK(run_cli("build --config " + bad2.string() + " --out " + (dir / "h").string())
              .exit_code == 2);

    fs::remove_all(dir);
}

TEST_CASE("cli measure determinism and gamma zero scan") {
    fs::path dir = fs::temp_directory_path() / "bnf_cli_test_measure";
    fs::remove_all(dir);
    fs::path cfg = write_config(dir, "m.json", R"({
      "lattice": {"theta": 1, "J": 4},
      "potential": {"m": 1.0, "seed": 2},
      "nonlinearity": {"terms": []},
      "nf": {"gamma": 0.05, "alpha": 3.0, "N": 3, "r_star": 1, "p": 3.0},
      "experiment": {"kind": "measure", "seed": 9, "r": 3, "samples": 150,
                     "Ns": [3], "gammas": [0.05, 0.1]}
    })");
    CHECK(run_cli("measure --config " + cfg.string() + " --out-csv " + (dir / "m1.csv").string())
              .exit_code == 0);
    CHECK(run_cli("measure --config " + cfg.string() + " --out-csv " + (dir / "m2.csv").string())
              .exit_code == 0);
    CHECK(slurp(dir / "m1.csv") == slurp(dir / "m2.csv"));
    fs::remove_all(dir);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out_dir;
};

fs::path fresh_dir(const std::string& name) {
    const auto d = fs::temp_directory_path() / "chaoslab_cli_test" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CHAOSLAB_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_spectrum(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    out << body;
}

} // namespace

TEST_CASE("hermite table artifact") {
    const auto dir = fresh_dir("hermite");
    const int rc =
        run_cli("hermite-table --kmax 4 --lambda 0.5 --grid -1:1:5 --out " + dir.string());
    CHECK(rc == 0);
    const std::string csv = slurp(dir / "hermite_table.csv");
    CHECK(csv.rfind("k,lambda,x,value", 0) == 0);
    CHECK(fs::exists(dir / "hermite-table_manifest.json"));
}

TEST_CASE("density run is reproducible byte for byte") {
    const auto dir1 = fresh_dir("dens1");
    const auto dir2 = fresh_dir("dens2");
    write_spectrum(dir1 / "spec.json", "[1.0, 0.5, 0.25]");
    const std::string base = "chaos2-density --spectrum " + (dir1 / "spec.json").string() +
                             " --n 20000 --seed 9 --grid -4:4:41";
    CHECK(run_cli(base + " --threads 2 --out " + dir1.string()) == 0);
    CHECK(run_cli(base + " --threads 1 --out " + dir2.string()) == 0);
    CHECK(slurp(dir1 / "density.csv") == slurp(dir2 / "density.csv"));
    CHECK(fs::exists(dir1 / "density_summary.json"));
}

TEST_CASE("estimator variants and svg output") {
    const auto dir = fresh_dir("dens3");
    write_spectrum(dir / "spec.json", "[0.8, 0.4, 0.2, 0.1]");
    CHECK(run_cli("chaos2-density --spectrum " + (dir / "spec.json").string() +
                  " --n 5000 --estimator kde --out " + dir.string()) == 0);
    CHECK(run_cli("chaos2-density --spectrum " + (dir / "spec.json").string() +
                  " --n 5000 --estimator fmla3 --svg plot.svg --out " + dir.string()) == 0);
    const std::string svg = slurp(dir / "plot.svg");
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("malformed spectrum exits with usage error") {
    const auto dir = fresh_dir("bad");
    write_spectrum(dir / "spec.json", "{\"eigenvalues\": 3}");
    const int rc = run_cli("negmoment --spectrum " + (dir / "spec.json").string() +
                           " --alpha 1 --out " + dir.string());
    CHECK(rc == 2);
}

TEST_CASE("negative moment divergence exits with runtime error") {
    const auto dir = fresh_dir("diverge");
    write_spectrum(dir / "spec.json", "[1.0, 1.0]");
    const int rc = run_cli("negmoment --spectrum " + (dir / "spec.json").string() +
                           " --alpha 1 --out " + dir.string());
    CHECK(rc == 1);
}

TEST_CASE("certificate and stein subcommands") {
    const auto dir = fresh_dir("cert");
    std::ostringstream spec;
    spec << "[";
    for (int i = 1; i <= 12; ++i) spec << (i > 1 ? "," : "") << 1.0 / i;
    spec << "]";
    write_spectrum(dir / "spec.json", spec.str());
    CHECK(run_cli("certificate --spectrum " + (dir / "spec.json").string() + " --cq 2 --out " +
                  dir.string()) == 0);
    CHECK(slurp(dir / "certificate.json").find("\"bound\"") != std::string::npos);
    CHECK(run_cli("stein-check --spectrum " + (dir / "spec.json").string() +
                  " --h indh:0:1 --n 20000 --seed 4 --out " + dir.string()) == 0);
    CHECK(slurp(dir / "stein_check.json").find("z_score") != std::string::npos);
}

TEST_CASE("fourth-moment over a spectra directory") {
    const auto dir = fresh_dir("fm");
    const auto specs = dir / "specs";
    fs::create_directories(specs);
    write_spectrum(specs / "a.json", "[0.5,0.5,0.5,0.5]");
    write_spectrum(specs / "b.json", "[0.35,0.35,0.35,0.35,0.35,0.35,0.35,0.35]");
    CHECK(run_cli("fourth-moment --spectra " + specs.string() + " --out " + dir.string()) == 0);
    CHECK(slurp(dir / "fourth_moment.csv").find("fourth_gap") != std::string::npos);
}

TEST_CASE("ou subcommands") {
    const auto dir = fresh_dir("ou");
    CHECK(run_cli("ou-eigs --theta 1 --gamma 1 --T 10 --count 30 --nystrom-nodes 64 --out " +
                  dir.string()) == 0);
    const std::string csv = slurp(dir / "ou_eigs.csv");
    CHECK(csv.rfind("i,lo,lambda,hi,residual", 0) == 0);
    CHECK(run_cli("ou-lse --theta 1 --gamma 1 --T 50 --dt 0.05 --seeds 5 --out " + dir.string()) ==
          0);
    CHECK(slurp(dir / "ou_lse.csv").rfind("seed,theta_hat", 0) == 0);
    CHECK(run_cli("ou-rate --theta 1 --gamma 1 --T-list 5,10,20,40 --n 20000 --seed 2 "
                  "--svg rate.svg --out " +
                  dir.string()) == 0);
    CHECK(slurp(dir / "ou_rate_summary.json").find("slope") != std::string::npos);
    CHECK(slurp(dir / "rate.svg").find("</svg>") != std::string::npos);
}

TEST_CASE("config file with flag override") {
    const auto dir = fresh_dir("config");
    write_spectrum(dir / "spec.json", "[1.0,0.5]");
    {
        std::ofstream cfg(dir / "run.json");
        cfg << "{\"spectrum\": \"" << (dir / "spec.json").string()
            << "\", \"n\": 3000, \"grid\": \"-3:3:11\", \"seed\": 5, \"out\": \"" << dir.string()
            << "\"}";
    }
    CHECK(run_cli("chaos2-density --config " + (dir / "run.json").string()) == 0);
    const std::string m1 = slurp(dir / "chaos2-density_manifest.json");
    CHECK(m1.find("\"seed\": 5") != std::string::npos);
    // a flag on the command line overrides the config value
    CHECK(run_cli("chaos2-density --config " + (dir / "run.json").string() + " --seed 6") == 0);
    const std::string m2 = slurp(dir / "chaos2-density_manifest.json");
    CHECK(m2.find("\"seed\": 6") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("definitely-not-a-command") == 2);
    CHECK(run_cli("chaos2-density") == 2); // missing required --spectrum
    CHECK(run_cli("hermite-table --kmax 99") == 2);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("NLBEAM_CLI");
    REQUIRE_MESSAGE(p != nullptr, "NLBEAM_CLI must point at the nlbeam binary");
    return p;
}

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE_MESSAGE(f.good(), ("missing file: " + p.string()));
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("nlbeam_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("ntbm subcommand writes beam CSV and summary JSON") {
    TempDir dir;
    const int rc = run("ntbm --problem 2 --dist linear --nx 101 --nalpha 12 --out " +
                       dir.path.string());
    CHECK(rc == 0);
    const std::string csv = slurp(dir.path / "ntbm_beam.csv");
    CHECK(csv.find("# nlbeam") != std::string::npos);
    CHECK(csv.find("x,w,phi,M,Q") != std::string::npos);
    json summary = json::parse(slurp(dir.path / "ntbm_summary.json"));
    CHECK(summary["h_c"].get<double>() > 0.0);
    CHECK(summary["chi"].get<double>() > 0.5);
    CHECK(summary["iterations"].get<int>() >= 1);
}

TEST_CASE("problem presets appear in the provenance echo") {
    TempDir dir;
    const int rc = run("ntbm --problem 3 --dist uniform --alpha 0.8 --nx 61 --nalpha 8 --out " +
                       dir.path.string());
    CHECK(rc == 0);
    const std::string csv = slurp(dir.path / "ntbm_beam.csv");
    CHECK(csv.find("h=0.15") != std::string::npos);
    CHECK(csv.find("q=500000000") != std::string::npos);
    CHECK(csv.find("dist=uniform-0.8") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical CSV output") {
    TempDir d1, d2;
    const std::string args = "ntbm --problem 2 --dist sine --nx 81 --nalpha 10 --out ";
    CHECK(run(args + d1.path.string()) == 0);
    CHECK(run(args + d2.path.string()) == 0);
    CHECK(slurp(d1.path / "ntbm_beam.csv") == slurp(d2.path / "ntbm_beam.csv"));
}

TEST_CASE("anet2d subcommand writes the nodal field CSV") {
    TempDir dir;
    const int rc =
        run("anet2d --problem 2 --dist linear --nx 41 --ny 7 --out " + dir.path.string());
    CHECK(rc == 0);
    const std::string csv = slurp(dir.path / "anet_fields.csv");
    CHECK(csv.find("x,y,u_x,u_y,sigma_xx,sigma_yy,sigma_xy") != std::string::npos);
    json stats = json::parse(slurp(dir.path / "anet_stats.json"));
    CHECK(stats["dof"].get<int>() == 2 * 41 * 7);
    CHECK(stats["max_uy"].get<double>() > 0.0);
}

TEST_CASE("config errors exit with code 2 and name the key") {
    TempDir dir;
    CHECK(run("ntbm --h -1 --out " + dir.path.string()) == 2);
    CHECK(run("ntbm --dist wavelet --out " + dir.path.string()) == 2);
    CHECK(run("ntbm --problem 9 --out " + dir.path.string()) == 2);

    const fs::path cfg = dir.path / "bad.json";
    std::ofstream(cfg) << R"({"nx": 51, "frobnicate": 1})";
    const std::string cmd =
        cli_path() + " ntbm --config " + cfg.string() + " --out " + dir.path.string() +
        " 2> " + (dir.path / "err.txt").string();
    const int rc = WEXITSTATUS(std::system(cmd.c_str()));
    CHECK(rc == 2);
    CHECK(slurp(dir.path / "err.txt").find("frobnicate") != std::string::npos);
}

TEST_CASE("JSON config is applied and flags override it") {
    TempDir dir;
    const fs::path cfg = dir.path / "run.json";
    std::ofstream(cfg) << R"({"problem": 2, "dist": "sine", "nx": 61, "nalpha": 8})";
    const int rc = run("ntbm --config " + cfg.string() + " --nx 41 --out " + dir.path.string());
    CHECK(rc == 0);
    const std::string csv = slurp(dir.path / "ntbm_beam.csv");
    CHECK(csv.find("nx=41") != std::string::npos);   // flag wins
    CHECK(csv.find("dist=sine") != std::string::npos);  // file value kept
}

TEST_CASE("sparsity subcommand reports the Fig. 6 block counts") {
    TempDir dir;
    const int rc = run("sparsity --problem 4 --dist linear --nx 26 --ny 6 --nalpha 6 --out " +
                       dir.path.string());
    CHECK(rc == 0);
    json rep = json::parse(slurp(dir.path / "sparsity.json"));
    CHECK(rep["anet"]["dense_blocks"].get<int>() == 6);
    CHECK(rep["ntbm"]["dense_blocks"].get<int>() == 1);
    CHECK(fs::exists(dir.path / "anet_occupancy.pgm"));
    CHECK(fs::exists(dir.path / "ntbm_occupancy.pgm"));
}

TEST_CASE("compare subcommand emits the gap report") {
    TempDir dir;
    const int rc = run("compare --problem 2 --dist uniform --alpha 1.0 --nx 81 --ny 9 "
                       "--nalpha 8 --out " + dir.path.string());
    CHECK(rc == 0);
    json rep = json::parse(slurp(dir.path / "compare.json"));
    CHECK(rep["rel_gap"].get<double>() < 0.10);
    CHECK(fs::exists(dir.path / "compare_profiles.csv"));
}

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "lodisq/discrepancy1d.hpp"
#include "lodisq/io.hpp"

#ifndef LODISQ_CLI_PATH
#define LODISQ_CLI_PATH "lodisq"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const std::string out_path = "cli_test_stdout.tmp";
    const std::string cmd = std::string(LODISQ_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    r.out = slurp(out_path);
    std::remove(out_path.c_str());
    return r;
}

}  // namespace

TEST_CASE("gen emits the vdC prefix") {
    auto r = run("gen --kind sbox --b 2 --d 1 --n 8");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0\n0.5\n0.25\n0.75\n0.125\n0.625\n0.375\n0.875\n");
}

TEST_CASE("gen writes files and is reproducible") {
    auto a = run("gen --kind sboxplus --b 2 --d 2 --n 16 --seed 7 --out cli_a.csv");
    auto b = run("gen --kind sboxplus --b 2 --d 2 --n 16 --seed 7 --out cli_b.csv");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    const std::string ca = slurp("cli_a.csv");
    CHECK(ca == slurp("cli_b.csv"));
    CHECK(std::count(ca.begin(), ca.end(), '\n') == 16);

    // the emitted points fill the resolution-4 grid one per cell
    const auto rows = lodisq::read_csv_file("cli_a.csv");
    lodisq::PointSet ps;
    ps.dim = 2;
    ps.base = 2;
    for (const auto& row : rows) {
        REQUIRE(row.size() == 2);
        ps.pts.push_back(row[0]);
        ps.pts.push_back(row[1]);
    }
    CHECK(lodisq::verify_perturbed_lattice(ps, 2, 2).ok);

    std::remove("cli_a.csv");
    std::remove("cli_b.csv");
}

TEST_CASE("gen sphere-lambert honors q0") {
    auto r = run("gen --kind sphere-lambert --b 2 --n 4 --q0 0,0.5 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 6) == "1,0,0\n");
}

TEST_CASE("gen exact json") {
    auto r = run("gen --kind sbox --b 2 --d 1 --n 4 --out cli_pts.csv --exact-json cli_pts.json");
    CHECK(r.exit_code == 0);
    const std::string j = slurp("cli_pts.json");
    CHECK(j.find("\"schema_version\"") != std::string::npos);
    CHECK(j.find("\"points\"") != std::string::npos);
    std::remove("cli_pts.csv");
    std::remove("cli_pts.json");
}

TEST_CASE("disc evaluates star discrepancy of a generated prefix") {
    auto r = run("disc --kind sbox --b 2 --d 1 --n 4 --p inf,1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"star_scaled\": 1.0") != std::string::npos);
}

TEST_CASE("disc reads CSV input") {
    {
        std::ofstream os("cli_in.csv");
        os << "0\n0.5\n0.25\n0.75\n";
    }
    auto r = run("disc --input cli_in.csv --p inf");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"star_scaled\": 1.0") != std::string::npos);
    std::remove("cli_in.csv");
}

TEST_CASE("verify thm2 passes on a small range") {
    auto r = run("verify --thm 2 --b 2 --p inf --nmax 256 --seeds 2 --out cli_verify.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0 violation(s)") != std::string::npos);
    const std::string csv = slurp("cli_verify.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 256);
    std::remove("cli_verify.csv");
}

TEST_CASE("verify thm3 small range") {
    auto r = run("verify --thm 3 --b 3 --p 2 --nmax 128 --seeds 3 --seed 5");
    CHECK(r.exit_code == 0);
}

TEST_CASE("verify thm4 reports a fitted constant") {
    auto r = run("verify --thm 4 --b 2 --mmax 3 --caps 128 --seed 2 --out cli_t4.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("fitted C'") != std::string::npos);
    const std::string table = slurp("cli_t4.csv");
    CHECK(std::count(table.begin(), table.end(), '\n') == 2);
    std::remove("cli_t4.csv");
}

TEST_CASE("disc sphere estimator") {
    auto r = run("disc --kind sphere-healpix --n 48 --caps 64 --seed 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"estimate_scaled\"") != std::string::npos);
    CHECK(r.out.find("\"argmax_t\"") != std::string::npos);
    CHECK(r.out.find("\"centers\"") != std::string::npos);
}

TEST_CASE("count surrogate and usage errors") {
    auto r = run("count --b 2 --d 1 --delta 0.2 --nmax 16384 --mode both");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"exact_count\": 13") != std::string::npos);
    CHECK(r.out.find("\"surrogate_count\": 6") != std::string::npos);

    auto bad = run("count --b 2 --d 1 --nmax 100 --grid 1048576 --beta 8 --tau 1.25");
    CHECK(bad.exit_code == 2);

    auto bad2 = run("count --b 2 --d 1 --nmax 1000000 --mode exact");
    CHECK(bad2.exit_code == 2);  // exact cap exceeded

    auto bad3 = run("nonsense");
    CHECK(bad3.exit_code == 2);
}

TEST_CASE("config file supplies defaults, flags win") {
    {
        std::ofstream os("cli_cfg.json");
        os << "{\"gen\": {\"kind\": \"sbox\", \"b\": 3, \"d\": 1, \"n\": 3}}\n";
    }
    auto r = run("gen --config cli_cfg.json");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0\n0.33333333333333331\n0.66666666666666663\n");
    auto r2 = run("gen --config cli_cfg.json --b 2 --n 2");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out == "0\n0.5\n");
    std::remove("cli_cfg.json");
}

TEST_CASE("io failure exits with code 3") {
    auto r = run("gen --kind sbox --b 2 --d 1 --n 4 --out /nonexistent_dir/x.csv");
    CHECK(r.exit_code == 3);
}

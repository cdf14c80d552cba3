#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "birk_cli.hpp"

#include "birk/curves.hpp"
#include "birk/io.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string field(const std::string& report, const std::string& key) {
    std::istringstream is(report);
    std::string line;
    while (std::getline(is, line))
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    return "";
}

} // namespace

TEST_CASE("flag mapping covers the documented jobs") {
    auto cfg = birk::cli::parse_args({"rotnum", "--curve", "fish", "--P", "7,4", "--K",
                                      "2", "--N", "20000", "--precision", "high"});
    CHECK(cfg.command == "rotnum");
    CHECK(cfg.curve == "fish");
    CHECK(cfg.base_point == std::vector<double>{7.0, 4.0});
    CHECK(cfg.k == 2);
    CHECK(cfg.n == 20000);
    CHECK(cfg.precision == "high");

    auto grid = birk::cli::parse_args({"grid", "--r", "1.4", "--N", "20000", "--res",
                                       "500x500", "--f", "sin_xy", "--out", "grid.csv",
                                       "--img", "grid.pgm"});
    CHECK(grid.command == "grid");
    CHECK(grid.r == 1.4);
    CHECK(grid.res == "500x500");
    CHECK(grid.img == "grid.pgm");

    auto tb = birk::cli::parse_args({"threebody", "--H", "-2.63", "--mu", "0.1",
                                     "--step", "2e-5", "--returns", "20000", "--seed",
                                     "0.2,0"});
    CHECK(tb.command == "threebody");
    CHECK(tb.hamiltonian == -2.63);
    CHECK(tb.mu == 0.1);
    CHECK(tb.step == 2e-5);
    CHECK(tb.returns == 20000);
    CHECK(tb.seed == std::vector<double>{0.2, 0.0});
}

TEST_CASE("unknown flags and missing subcommands are usage errors") {
    CHECK_THROWS_AS(birk::cli::parse_args({"rotnum", "--frobnicate", "1"}),
                    CLI::ParseError);
    CHECK_THROWS_AS(birk::cli::parse_args({}), CLI::ParseError);
    CHECK_THROWS_AS(birk::cli::parse_args({"rotnum", "--precision", "medium"}),
                    CLI::ParseError);
}

TEST_CASE("run_job exit codes: success, domain error, missing input") {
    birk::cli::JobConfig ok;
    ok.command = "rotnum";
    ok.curve = "circle";
    ok.n = 300;
    ok.base_point = {0.0, 0.0};
    ok.out = "cli_rot.txt";
    CHECK(birk::cli::run_job(ok) == 0);
    std::remove("cli_rot.txt");

    birk::cli::JobConfig bad = ok;
    bad.curve = "flower";
    bad.n = 20000;
    bad.base_point = {0.0, 0.0};  // |W| = 6 there
    bad.out.clear();
    CHECK(birk::cli::run_job(bad) == 3);

    birk::cli::JobConfig none;
    none.command = "rotnum";
    CHECK(birk::cli::run_job(none) == 3);

    birk::cli::JobConfig infeasible;
    infeasible.command = "threebody";
    infeasible.seed = {0.4, 0.0};
    infeasible.step = 1e-3;
    infeasible.returns = 2;
    CHECK(birk::cli::run_job(infeasible) == 3);
}

TEST_CASE("identical configs give byte-identical outputs") {
    birk::cli::JobConfig cfg;
    cfg.command = "grid";
    cfg.r = 1.4;
    cfg.n = 500;
    cfg.res = "6x5";
    cfg.out = "cli_grid_a.csv";
    cfg.img = "cli_grid_a.pgm";
    REQUIRE(birk::cli::run_job(cfg) == 0);
    cfg.out = "cli_grid_b.csv";
    cfg.img = "cli_grid_b.pgm";
    cfg.threads = 1;
    REQUIRE(birk::cli::run_job(cfg) == 0);
    auto a = slurp("cli_grid_a.csv");
    auto b = slurp("cli_grid_b.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(slurp("cli_grid_a.pgm") == slurp("cli_grid_b.pgm"));
    for (const char* f :
         {"cli_grid_a.csv", "cli_grid_b.csv", "cli_grid_a.pgm", "cli_grid_b.pgm"})
        std::remove(f);
}

TEST_CASE("csv ingestion reproduces the generated-curve result") {
    // export a fish trajectory, re-ingest it, and compare the rho fields
    birk::cli::JobConfig gen;
    gen.command = "rotnum";
    gen.curve = "fish";
    gen.n = 20000;
    gen.base_point = {7.0, 4.0};
    gen.precision = "high";
    gen.out = "cli_fish_direct.txt";
    REQUIRE(birk::cli::run_job(gen) == 0);

    {
        using R = birk::quad;
        auto traj = birk::CurveSpec<R>::fish(birk::golden_rotation<R>()).trajectory(20000);
        birk::write_trajectory_csv("cli_fish_traj.csv", traj, {"fish export"});
    }
    birk::cli::JobConfig ing = gen;
    ing.curve.clear();
    ing.input = "cli_fish_traj.csv";
    ing.out = "cli_fish_ingested.txt";
    REQUIRE(birk::cli::run_job(ing) == 0);

    auto direct = slurp("cli_fish_direct.txt");
    auto ingested = slurp("cli_fish_ingested.txt");
    CHECK(field(direct, "rho") == field(ingested, "rho"));
    CHECK(field(direct, "winding") == field(ingested, "winding"));
    for (const char* f :
         {"cli_fish_direct.txt", "cli_fish_traj.csv", "cli_fish_ingested.txt"})
        std::remove(f);
}

TEST_CASE("wba command reports both averages") {
    birk::cli::JobConfig cfg;
    cfg.command = "wba";
    cfg.system = "standard-map";
    cfg.r = 1.4;
    cfg.seed = {2.0, 2.0};
    cfg.n = 2000;
    cfg.f = "sin_xy";
    cfg.out = "cli_wba.txt";
    REQUIRE(birk::cli::run_job(cfg) == 0);
    auto rep = slurp("cli_wba.txt");
    CHECK(!field(rep, "weighted_average").empty());
    CHECK(!field(rep, "uniform_average").empty());
    std::remove("cli_wba.txt");
}

TEST_CASE("json report carries the config hash") {
    birk::cli::JobConfig cfg;
    cfg.command = "rotnum";
    cfg.curve = "circle";
    cfg.n = 300;
    cfg.base_point = {0.0, 0.0};
    cfg.json = "cli_rot.json";
    REQUIRE(birk::cli::run_job(cfg) == 0);
    auto j = slurp("cli_rot.json");
    CHECK(j.find("config_hash") != std::string::npos);
    CHECK(j.find("\"rho\"") != std::string::npos);
    std::remove("cli_rot.json");
}

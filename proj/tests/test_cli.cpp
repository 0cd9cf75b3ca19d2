#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "mprony/io.hpp"

using mprony::io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" PRONY_CLI_PATH "\" " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch_dir()
{
    const auto dir = fs::temp_directory_path() / "mprony_test_cli";
    fs::create_directories(dir);
    return dir;
}

std::size_t count_lines(const fs::path& p)
{
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n;
}

}  // namespace

TEST_CASE("usage errors exit with 1")
{
    CHECK(run("").code == 1);
    CHECK(run("no-such-command").code == 1);
    CHECK(run("simulate --d 0").code == 1);
    CHECK(run("recover --moments /nonexistent.json").code == 1);
    CHECK(run("simulate --d 2 --m 40 --q 0.5").code == 1);  // packing infeasible
    CHECK(run("rank-sweep --n-max 13").code == 1);
    CHECK(run("--help").code == 0);
}

TEST_CASE("constants table")
{
    const auto r = run("constants --d-list 1,2,3,4,10,16,20,64,100,256 --json");
    REQUIRE(r.code == 0);
    const auto doc = Json::parse(r.out);
    REQUIRE(doc.size() == 10);
    const double table[] = {1.0, 1.4, 1.7, 2.0, 2.7, 3.0, 3.2, 4.0, 4.3, 5.0};
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(std::abs(doc[i]["c_d"].get<double>() - table[i]) < 0.05);
        CHECK(doc[i]["bound_holds"].get<bool>());
    }
    CHECK(doc[0]["construction"] == "cos");
}

TEST_CASE("simulate then recover reproduces the result bit for bit")
{
    const auto dir = scratch_dir();
    const auto moments = dir / "moments.json";
    const auto truth = dir / "truth.json";
    const auto sim = run("simulate --d 2 --m 5 --q 0.2 --n 9 --seed 1 --json --export-moments " + moments.string() +
                         " --export-ensemble " + truth.string());
    REQUIRE(sim.code == 0);
    const auto sdoc = Json::parse(sim.out);
    CHECK(sdoc["condition_met"].get<bool>());
    CHECK(sdoc["recovery"]["status"] == "success");
    CHECK(sdoc["recovery"]["matching"]["max_wrap_error"].get<double>() < 1e-8);

    const auto rec = run("recover --moments " + moments.string() + " --truth " + truth.string());
    REQUIRE(rec.code == 0);
    CHECK(Json::parse(rec.out) == sdoc["recovery"]);

    // same seed, same output
    CHECK(run("simulate --d 2 --m 5 --q 0.2 --n 9 --seed 1 --json").out ==
          run("simulate --d 2 --m 5 --q 0.2 --n 9 --seed 1 --json").out);
    fs::remove_all(dir);
}

TEST_CASE("simulate in three dimensions")
{
    const auto r = run("simulate --d 3 --m 4 --q 0.25 --n 9 --seed 2 --json");
    REQUIRE(r.code == 0);
    const auto doc = Json::parse(r.out);
    CHECK(doc["condition_met"].get<bool>());
    CHECK(doc["recovery"]["matching"]["max_wrap_error"].get<double>() < 1e-8);
}

TEST_CASE("an unmet condition is reported")
{
    const auto r = run("simulate --d 1 --m 3 --q 0.3 --n 1");
    CHECK(r.out.find("condition not met") != std::string::npos);
    CHECK(r.code == 2);
}

TEST_CASE("window grids and boundaries")
{
    const auto dir = scratch_dir();
    const auto psi = dir / "psi.csv";
    REQUIRE(run("window-grid --p 2 --q 0.1 --n 10 --which psi --res 11 --out " + psi.string()).code == 0);
    CHECK(count_lines(psi) == 122);
    CHECK(count_lines(dir / "psi_boundary.csv") == 6);

    const auto hat = dir / "hat.csv";
    REQUIRE(run("window-grid --p 4 --q 0.1 --n 10 --which psi_hat --res 41 --out " + hat.string()).code == 0);
    // sign of psi-hat agrees with the side of the l^4 sphere
    std::ifstream in(hat);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x1,x2,value");
    std::size_t checked = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string a, b, v;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        std::getline(ss, v, ',');
        const double x = std::stod(a), y = std::stod(b), value = std::stod(v);
        const double norm4 = x * x * x * x + y * y * y * y;
        if (norm4 < 0.8 * 1e4 && value != 0.0) {
            CHECK(value > 0.0);
            ++checked;
        }
        if (norm4 > 1.2 * 1e4 && value != 0.0) {
            CHECK(value < 0.0);
            ++checked;
        }
    }
    CHECK(checked > 100);
    fs::remove_all(dir);
}

TEST_CASE("rank sweep output")
{
    const auto r = run("rank-sweep --d 1 --m 3 --q 0.2 --seed 4 --n-max 5");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("first stabilization at l=2 with rank 3") != std::string::npos);
    CHECK(r.out.find("holds") != std::string::npos);
}

TEST_CASE("tolerance override from the environment")
{
    CHECK(run("rank-sweep --n-max 3", "PRONY_TOL=abc").code == 1);
    CHECK(run("rank-sweep --n-max 3", "PRONY_TOL=2").code == 1);
    CHECK(run("rank-sweep --n-max 3", "PRONY_TOL=1e-6").code == 0);
}

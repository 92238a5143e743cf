#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "nullgeom/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string &args)
{
    const std::string cmd = std::string(NULLGEOM_CLI) + " " + args + " 2>&1";
    Run r;
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, n);
    }
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string config(const std::string &name) { return std::string(NULLGEOM_CONFIGS) + "/" + name; }

fs::path scratch(const std::string &name)
{
    const fs::path d = fs::temp_directory_path() / ("nullgeom_cli_" + name);
    fs::remove_all(d);
    return d;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("bundled example config passes")
{
    const fs::path out = scratch("example");
    const Run r = run("verify --config " + config("example1.json") + " --out " + out.string());
    CHECK_MESSAGE(r.code == 0, r.out);
    const nullgeom::Report rep = nullgeom::report_from_csv(slurp(out / "report.csv"));
    std::set<std::string> ids;
    for (const auto &row : rep.rows()) {
        ids.insert(row.check_id);
    }
    CHECK(ids.size() >= 8);
    CHECK(rep.passed());
    CHECK(fs::exists(out / "report.json"));
    CHECK_FALSE(fs::exists(out / "report.csv.tmp"));

    const Run s = run("report --in " + (out / "report.json").string());
    CHECK(s.code == 0);
    CHECK(s.out.find("PASS") != std::string::npos);
}

TEST_CASE("bundled geodesic config gives exact zeros")
{
    const fs::path out = scratch("geodesic");
    const Run r = run("verify --config " + config("geodesic_fixture.json") + " --out " + out.string());
    CHECK_MESSAGE(r.code == 0, r.out);
    const nullgeom::Report rep = nullgeom::report_from_csv(slurp(out / "report.csv"));
    CHECK(!rep.rows().empty());
    for (const auto &row : rep.rows()) {
        CHECK_MESSAGE(row.residual == 0.0, row.check_id);
    }
}

TEST_CASE("failing checks exit with 1")
{
    // the cone carries the substitution rows, whose odd-r coefficients disagree
    const fs::path out = scratch("cone");
    const Run r = run("verify --config " + config("lightcone.json") + " --out " + out.string());
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL  umbilic/substitution") != std::string::npos);
    CHECK(run("report --in " + (out / "report.csv").string()).code == 1);
}

TEST_CASE("input errors exit with 2")
{
    const fs::path dir = scratch("bad");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.json") << R"cfg({"ambient": {"dim": 5}, "params": ["p1", "p2", "p3"],
        "immersion": ["sin(", "0", "0", "0", "0"], "domain": [[0, 1], [0, 1], [0, 1]],
        "samples": {"seed": 1}})cfg";
    const Run r = run("verify --config " + (dir / "bad.json").string() + " --out " + (dir / "out").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("/immersion/0") != std::string::npos);
    CHECK(r.out.find("byte 4") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out" / "report.csv"));

    std::ofstream(dir / "flat.json") << R"cfg({"ambient": {"dim": 5}, "params": ["p1", "p2", "p3"],
        "immersion": ["0", "p1", "p2", "p3", "0"], "domain": [[0, 1], [0, 1], [0, 1]],
        "samples": {"seed": 1}})cfg";
    const Run g = run("verify --config " + (dir / "flat.json").string());
    CHECK(g.code == 2);
    CHECK(g.out.find("chart point") != std::string::npos);

    CHECK(run("verify --config " + (dir / "missing.json").string()).code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("recurrence --n 5 --c 1").code == 2);
    CHECK(run("recurrence --n 4 --c 1/0").code == 2);
}

TEST_CASE("recurrence table")
{
    const Run r = run("recurrence --n 4 --c 1 --V 1");
    CHECK(r.code == 0);
    CHECK(r.out == "r,exact,decimal\n0,1,1\n1,0,0\n2,2,2\n3,0,0\n4,1,1\n");
    const Run e = run("recurrence --n 2 --c 2 --einstein");
    CHECK(e.out == "r,exact,decimal\n0,1,1\n1,0,0\n2,1,1\n");
}

TEST_CASE("analyze dumps every sampled point")
{
    const Run r = run("analyze --config " + config("geodesic_fixture.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("\"A_N\"") != std::string::npos);
    CHECK(r.out.find("\"S_What\"") != std::string::npos);
}

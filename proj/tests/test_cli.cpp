#include "support.hpp"

#include "khsq/error.hpp"
#include "khsq_app/cache.hpp"
#include "khsq_app/commands.hpp"
#include "khsq_app/proptest.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace khsq;
using namespace khsq::app;

#ifndef KHSQ_BIN
#define KHSQ_BIN "khsq"
#endif

namespace {

JobSpec job_for(const std::string& name) {
    JobSpec j;
    j.table = khsq::test::kTable;
    j.names = {name};
    return j;
}

std::string run(int (*cmd)(const JobSpec&, std::ostream&), const JobSpec& j, int* rc = nullptr) {
    std::ostringstream os;
    int r = cmd(j, os);
    if (rc) *rc = r;
    return os.str();
}

int exit_code(const std::string& args) {
    std::string line = std::string(KHSQ_BIN) + " " + args + " >/dev/null 2>&1";
    int st = std::system(line.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::filesystem::path fresh_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("khsq-test-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("homology report for the trefoil PD") {
    JobSpec j;
    j.pds = {"X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]"};
    j.parity = "even";
    j.ring = "z";
    std::string out = run(cmd_homology, j);
    CHECK(out.find("(-2, -7) Z/2") != std::string::npos);
    CHECK(out.find("(-3, -9) Z") != std::string::npos);
    j.format = "csv";
    out = run(cmd_homology, j);
    CHECK(out.rfind("knot,parity,ring,i,j,rank,torsion\n", 0) == 0);
    CHECK(out.find(",even,Z,-2,-7,0,2") != std::string::npos);
}

TEST_CASE("odd homology of 8_19 by name") {
    auto j = job_for("8_19");
    j.parity = "odd";
    j.format = "json";
    std::string out = run(cmd_homology, j);
    CHECK(out.find("\"parity\": \"odd\"") != std::string::npos);
    CHECK(out.find("\"even\"") == std::string::npos);
}

TEST_CASE("st rows, verification and formats") {
    auto j = job_for("8_19");
    j.ls = {1, 2, 3};
    j.verify_table = khsq::test::kStTable;
    int rc = -1;
    std::string out = run(cmd_st, j, &rc);
    CHECK(rc == 0);
    CHECK(out.find("8_19 St_1: empty") != std::string::npos);
    CHECK(out.find("8_19 St_2: empty") != std::string::npos);
    CHECK(out.find("8_19 St_3:\n  (2, 11)↦(0, 0, 1, 0)") != std::string::npos);
    CHECK(out.find("all rows match") != std::string::npos);

    auto k = job_for("9_42");
    k.ls = {3};
    k.format = "json";
    out = run(cmd_st, k);
    CHECK(out.find("\"knot\": \"9_42\"") != std::string::npos);
    CHECK(out.find("\"i\": -2") != std::string::npos);

    auto t = job_for("3_1");
    t.ls = {0, 1, 2, 3};
    out = run(cmd_st, t);
    CHECK(out == "3_1 St_0: empty\n3_1 St_1: empty\n3_1 St_2: empty\n3_1 St_3: empty\n");
}

TEST_CASE("verification detects a wrong table") {
    auto dir = fresh_dir("verify");
    std::filesystem::create_directories(dir);
    auto path = (dir / "bad.tsv").string();
    {
        std::ofstream f(path);
        f << "# name\tl\ti\tj\tx1\tx2\tx3\tx4\n8_19\t3\t2\t11\t1\t0\t0\t0\n";
    }
    auto j = job_for("8_19");
    j.ls = {3};
    j.verify_table = path;
    int rc = -1;
    std::string out = run(cmd_st, j, &rc);
    CHECK(rc == 1);
    CHECK(out.find("MISMATCH") != std::string::npos);
    CHECK(out.find("  - (2, 11)↦(1, 0, 0, 0)") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("hypothesis failures are flagged but not fatal") {
    auto j = job_for("K11n19");
    j.ls = {1};
    int rc = -1;
    std::string out = run(cmd_st, j, &rc);
    CHECK(rc == 0);
    CHECK(out.find("hypotheses fail") != std::string::npos);
    CHECK(out.find("Z/4") != std::string::npos);
}

TEST_CASE("cache hits reproduce cold output byte for byte") {
    auto dir = fresh_dir("cache");
    auto j = job_for("10_124");
    j.ls = {1, 3};
    j.cache_dir = dir.string();
    std::string cold = run(cmd_st, j);
    REQUIRE(std::filesystem::exists(dir));
    std::size_t files = 0;
    for (auto& e : std::filesystem::directory_iterator(dir)) files += e.path().extension() == ".bin";
    CHECK(files > 0);
    std::string warm = run(cmd_st, j);
    CHECK(warm == cold);
    j.format = "json";
    CHECK(run(cmd_st, j) == run(cmd_st, [&] { auto k = j; k.cache_dir.clear(); return k; }()));
    auto h = job_for("10_124");
    h.cache_dir = dir.string();
    CHECK(run(cmd_homology, h) == run(cmd_homology, h));

    // a corrupted entry is ignored, not trusted
    for (auto& e : std::filesystem::directory_iterator(dir)) {
        std::fstream f(e.path(), std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-1, std::ios::end);
        f.put('\x7f');
    }
    j.format = "text";
    CHECK(run(cmd_st, j) == cold);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cache keys separate parameters and versions") {
    auto d = khsq::test::named("4_1");
    CHECK(ResultCache::key("st", d, "l=1") != ResultCache::key("st", d, "l=3"));
    CHECK(ResultCache::key("st", d, "l=1") != ResultCache::key("st", khsq::test::named("3_1"), "l=1"));
    CHECK(ResultCache::key("st", d, "l=1") == ResultCache::key("st", parse_pd(render_pd(d)), "l=1"));
}

TEST_CASE("worker count does not change output") {
    auto j = job_for("10_132");
    j.ls = {0, 1, 2, 3};
    j.format = "json";
    std::string one = run(cmd_st, j);
    j.jobs = 4;
    CHECK(run(cmd_st, j) == one);
}

TEST_CASE("property runner") {
    auto j = job_for("8_19");
    j.suites = {"sum4"};
    int rc = -1;
    std::string out = run(cmd_proptest, j, &rc);
    CHECK(rc == 0);
    CHECK(out.find("sum4: ") != std::string::npos);
    JobSpec o;
    o.suites = {"oracle"};
    o.diagrams = 6;
    CHECK(run(cmd_proptest, o, &rc).find("oracle: ") != std::string::npos);
    CHECK(rc == 0);
    o.suites = {"nope"};
    CHECK_THROWS_AS(run(cmd_proptest, o), Error);
}

TEST_CASE("invalid jobs") {
    JobSpec j = job_for("3_1");
    j.ls = {-1};
    CHECK_THROWS_AS(run(cmd_st, j), Error);
    j = job_for("3_1");
    j.format = "xml";
    CHECK_THROWS_AS(run(cmd_homology, j), Error);
    JobSpec empty;
    CHECK_THROWS_AS(run(cmd_homology, empty), Error);
}

TEST_CASE("exit codes of the binary") {
    CHECK(exit_code("homology --pd 'X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]'") == 0);
    CHECK(exit_code("homology --pd 'X[1,2,3]'") == 2);
    CHECK(exit_code("st --name nonexistent") == 2);
    CHECK(exit_code("st --name 3_1 --l x") == 2);
    CHECK(exit_code("nosuchcommand") == 2);
    CHECK(exit_code("--help") == 0);
    CHECK(exit_code("st --name 8_19 --l 3 --verify-table " KHSQ_DATA_DIR "/st_table.tsv") == 0);
    CHECK(exit_code("proptest --suite d2 --diagrams 3") == 0);
}

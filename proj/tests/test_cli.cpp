#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("SERRE_ATLAS_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SERRE_ATLAS_CLI must point at the CLI binary");
    return p;
}

struct TmpDir {
    fs::path path;
    TmpDir() {
        path = fs::temp_directory_path() /
               ("serre-atlas-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TmpDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        std::ofstream(p) << content;
        return p;
    }
};

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const TmpDir& tmp, const std::string& args) {
    fs::path o = tmp.path / "stdout.txt";
    fs::path e = tmp.path / "stderr.txt";
    std::string cmd = cli_path() + " " + args + " > " + o.string() + " 2> " + e.string();
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
}

const char* kAlg235 = R"({"family":"canonical","weights":[2,3,5],"lambdas":["1"]})";
const char* kAlg442 = R"({"family":"canonical","weights":[4,4,2],"lambdas":["1"]})";
const char* kB1 = R"({"family":"beilinson","n":1})";
const char* kB2 = R"({"family":"beilinson","n":2})";
const char* kStableThin =
    R"({"dims":{"0":1,"1":1},"maps":{"x0_0":[["1"]],"x1_0":[["0"]]}})";
const char* kSimpleSource = R"({"dims":{"0":1,"1":0},"maps":{}})";
const char* kBadShape =
    R"({"dims":{"0":1,"1":1},"maps":{"x0_0":[["1"],["2"]],"x1_0":[["0"]]}})";
const char* kBadCert =
    R"({"family":"custom","vertices":["u","v"],
        "arrows":[["a","u","v"],["b","v","u"]],
        "relations":[],"nilpotency_bound":3})";

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("algebra info reports dimension, fixed space, minimality") {
    TmpDir tmp;
    fs::path alg = tmp.file("a235.json", kAlg235);
    RunResult r = run_cli(tmp, "algebra info " + alg.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "family: canonical"));
    CHECK(contains(r.out, "dimension: 32"));
    CHECK(contains(r.out, "fixed space dim: 1"));
    CHECK(contains(r.out, "minimal Coxeter stable (unique)"));

    fs::path a442 = tmp.file("a442.json", kAlg442);
    RunResult r2 = run_cli(tmp, "algebra info " + a442.string() + " --vector 4,3,2,1,3,2,1,2,0");
    CHECK(r2.exit_code == 0);
    CHECK(contains(r2.out, "dimension: 31"));
    CHECK(contains(r2.out, "fixed space dim: 2"));
    CHECK(contains(r2.out, "minimal Coxeter stable (unique)"));

    fs::path b2 = tmp.file("b2.json", kB2);
    RunResult r3 = run_cli(tmp, "algebra info " + b2.string());
    CHECK(r3.exit_code == 0);
    CHECK(contains(r3.out, "dimension: 15"));
    CHECK(contains(r3.out, "jordan kernel dims: 1 2 3"));

    RunResult r4 = run_cli(tmp, "algebra info " + alg.string() + " --vector 2,2,2,2,2,2,2,2,2");
    CHECK(r4.exit_code == 0);
    CHECK(contains(r4.out, "Coxeter stable, not minimal"));
}

TEST_CASE("module check verdicts and exit codes") {
    TmpDir tmp;
    fs::path b1 = tmp.file("b1.json", kB1);
    fs::path stable = tmp.file("stable.json", kStableThin);
    RunResult r = run_cli(tmp, "module check " + b1.string() + " " + stable.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "relations: ok"));
    CHECK(contains(r.out, "serre stable (shift 1): yes"));
    CHECK(contains(r.out, "rho stable: yes"));

    // single-file form with the algebra inline
    std::string inline_mod = std::string(R"({"algebra":)") + kB1 +
                             R"(,"dims":{"0":1,"1":1},"maps":{"x0_0":[["1"]],"x1_0":[["0"]]}})";
    fs::path mod = tmp.file("inline.json", inline_mod);
    RunResult r2 = run_cli(tmp, "module check " + mod.string());
    CHECK(r2.exit_code == 0);
    CHECK(contains(r2.out, "serre stable (shift 1): yes"));

    fs::path s0 = tmp.file("s0.json", kSimpleSource);
    RunResult r3 = run_cli(tmp, "module check " + b1.string() + " " + s0.string());
    CHECK(r3.exit_code == 1);
    CHECK(contains(r3.out, "serre stable (shift 1): no"));
    CHECK(contains(r3.out, "reason:"));

    fs::path bad = tmp.file("bad.json", kBadShape);
    RunResult r4 = run_cli(tmp, "module check " + b1.string() + " " + bad.string());
    CHECK(r4.exit_code == 2);
}

TEST_CASE("atlas summary, exit codes, and byte-stable JSON") {
    TmpDir tmp;
    fs::path alg = tmp.file("a235.json", kAlg235);
    RunResult r = run_cli(tmp, "atlas " + alg.string() + " --samples 5 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "special points: 0:2 1:5 inf:3"));
    CHECK(contains(r.out, "generic samples: 5"));
    CHECK(contains(r.out, "matches: yes"));

    RunResult j1 = run_cli(tmp, "atlas " + alg.string() + " --samples 5 --seed 3 --json");
    RunResult j2 = run_cli(tmp, "atlas " + alg.string() + " --samples 5 --seed 3 --json");
    CHECK(j1.exit_code == 0);
    CHECK(!j1.out.empty());
    CHECK(j1.out == j2.out);
    RunResult j3 = run_cli(tmp, "atlas " + alg.string() + " --samples 5 --seed 4 --json");
    CHECK(j1.out != j3.out);

    fs::path outfile = tmp.path / "atlas.json";
    RunResult r5 =
        run_cli(tmp, "atlas " + alg.string() + " --samples 5 --seed 3 -o " + outfile.string());
    CHECK(r5.exit_code == 0);
    CHECK(fs::exists(outfile));
    CHECK(contains(slurp(outfile), "\"matches_input\": true"));

    fs::path b1 = tmp.file("b1.json", kB1);
    RunResult r6 = run_cli(tmp, "atlas " + b1.string());
    CHECK(r6.exit_code == 2);
}

TEST_CASE("ortho table over the chart points") {
    TmpDir tmp;
    fs::path alg = tmp.file("a235.json", kAlg235);
    RunResult r = run_cli(tmp, "ortho " + alg.string() + " --points 0,inf,1,generic");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "(2,2)"));
    CHECK(contains(r.out, "(3,3)"));
    CHECK(contains(r.out, "(5,5)"));
    CHECK(contains(r.out, "(1,1)"));
    CHECK(contains(r.out, "(0,0)"));

    RunResult r2 = run_cli(tmp, "ortho " + alg.string() + " --points 1/3");
    CHECK(r2.exit_code == 2);
    CHECK(contains(r2.err, "error:"));
}

TEST_CASE("grading accepts both input forms") {
    TmpDir tmp;
    fs::path alg = tmp.file("a235.json", kAlg235);
    RunResult r = run_cli(tmp, "grading " + alg.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "invariant factors: [15]; free rank: 0"));

    fs::path pres = tmp.file("pres.json",
                             R"({"rank":3,"relations":[[4,-4,0],[0,4,-2]],"gamma":[1,0,0]})");
    RunResult r2 = run_cli(tmp, "grading " + pres.string());
    CHECK(r2.exit_code == 0);
    CHECK(contains(r2.out, "invariant factors: [2,4]; free rank: 0"));

    fs::path b1 = tmp.file("b1.json", kB1);
    RunResult r3 = run_cli(tmp, "grading " + b1.string());
    CHECK(r3.exit_code == 2);
}

TEST_CASE("cyclic demo") {
    TmpDir tmp;
    RunResult r = run_cli(tmp, "demo cyclic -n 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "single cycle"));
    CHECK(contains(r.out, "semisimple sum fixed: yes"));
    CHECK(contains(r.out, "length-n uniserials fixed: none"));

    RunResult r2 = run_cli(tmp, "demo cyclic -n 1");
    CHECK(r2.exit_code == 2);
}

TEST_CASE("schema and certificate failures") {
    TmpDir tmp;
    fs::path garbled = tmp.file("garbled.json", "{not json");
    RunResult r = run_cli(tmp, "algebra info " + garbled.string());
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "error:"));

    fs::path unknown = tmp.file("unknown.json", R"({"family":"nope"})");
    RunResult r2 = run_cli(tmp, "algebra info " + unknown.string());
    CHECK(r2.exit_code == 2);

    fs::path missing = tmp.path / "missing.json";
    RunResult r3 = run_cli(tmp, "algebra info " + missing.string());
    CHECK(r3.exit_code == 2);

    fs::path cert = tmp.file("cert.json", kBadCert);
    RunResult r4 = run_cli(tmp, "algebra info " + cert.string());
    CHECK(r4.exit_code == 3);
    CHECK(contains(r4.err, "certificate error:"));
    CHECK(contains(r4.err, "a.b.a"));
}

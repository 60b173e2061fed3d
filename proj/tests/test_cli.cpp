#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
    int code;
    std::string out; // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(INVSAT_BIN) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string tmp_path(const std::string& name) {
    const char* dir = std::getenv("TMPDIR");
    return std::string(dir ? dir : "/tmp") + "/" + name;
}

} // namespace

TEST_CASE("help exits 0 and names the subcommands") {
    RunResult r = run_cli("--help");
    CHECK(r.code == 0);
    for (const char* sub : {"decide", "reduce", "oracle", "verify", "eval"})
        CHECK(contains(r.out, sub));
}

TEST_CASE("decide exit codes: 0 SAT, 1 UNSAT, 2 error") {
    RunResult sat = run_cli("decide \"[x=x / ann(t)] = 5\"");
    CHECK(sat.code == 0);
    CHECK(contains(sat.out, "SAT"));
    CHECK(contains(sat.out, "entry ")); // a witness is printed

    RunResult unsat = run_cli("decide \"[x=x / ann(t)] = 3\"");
    CHECK(unsat.code == 1);
    CHECK(contains(unsat.out, "UNSAT"));

    RunResult bad = run_cli("decide \"[x=x / ann(t] = 5\"");
    CHECK(bad.code == 2);
    CHECK(contains(bad.out, "error"));
}

TEST_CASE("decide honors the ring option and rejects out-of-ring scalars") {
    RunResult r = run_cli("--ring twovalued:3 decide \"[x=x / ann((t)/(1+t))] = 3\"");
    CHECK(r.code == 0);

    // bare t is not an element of the two-valued ring
    RunResult bad = run_cli("--ring twovalued:3 decide \"[x=x / ann(t)] = 3\"");
    CHECK(bad.code == 2);
    CHECK(contains(bad.out, "not in the ring"));

    RunResult noring = run_cli("--ring global:5 decide \"[x=x / ann(t)] = 5\"");
    CHECK(noring.code == 2);
}

TEST_CASE("decide reads sentences from files and writes witnesses back out") {
    std::string sent = tmp_path("invsat_cli_sentence.txt");
    std::string wit = tmp_path("invsat_cli_witness.txt");
    {
        std::ofstream f(sent);
        f << "[x=x / ann(t)] = 25 & [ann(t) / div(t)] >= 3\n";
    }
    RunResult r = run_cli("decide --file " + sent + " --witness-out " + wit);
    REQUIRE(r.code == 0);

    RunResult v = run_cli("verify \"[x=x / ann(t)] = 25 & [ann(t) / div(t)] >= 3\" " + wit);
    CHECK(v.code == 0);
    CHECK(contains(v.out, "pass"));

    // the same witness fails against a sentence it does not model
    RunResult v2 = run_cli("verify \"[x=x / ann(t)] = 5\" " + wit);
    CHECK(v2.code == 1);
    CHECK(contains(v2.out, "fail"));

    std::remove(sent.c_str());
    std::remove(wit.c_str());
}

TEST_CASE("verify rejects malformed witness files") {
    std::string wit = tmp_path("invsat_cli_badwitness.txt");
    {
        std::ofstream f(wit);
        f << "entry nonsense\n";
    }
    RunResult r = run_cli("verify \"[x=x / ann(t)] = 5\" " + wit);
    CHECK(r.code == 2);
    CHECK(contains(r.out, "witness"));
    std::remove(wit.c_str());
}

TEST_CASE("trace and structured output") {
    RunResult r = run_cli("--trace --format structured decide \"[x=x / ann(t)] = 5\"");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "verdict=sat"));
    CHECK(contains(r.out, "trace depth=0"));
}

TEST_CASE("reduce prints stars, branches, and leaves") {
    RunResult r = run_cli("reduce \"[exists(t,t^2) / x=0] = 5\"");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "star 0:"));
    CHECK(contains(r.out, "branch 0 leaf 0:"));

    RunResult c = run_cli("reduce \"[x=x / x=x] = 5\"");
    CHECK(c.code == 0);
    CHECK(contains(c.out, "contradiction"));
}

TEST_CASE("reduce respects the branch budget option") {
    RunResult r = run_cli("--max-branches 1 reduce \"[exists(t,t^2) / x=0] = 5\"");
    CHECK(r.code == 2);
    CHECK(contains(r.out, "budget"));
}

TEST_CASE("oracle queries print frozen answers") {
    RunResult tug = run_cli("oracle tuganbaev t t^2");
    CHECK(tug.code == 0);
    CHECK(contains(tug.out, "alpha=1"));
    CHECK(contains(tug.out, "r=0"));
    CHECK(contains(tug.out, "s=1*t"));
    CHECK(contains(tug.out, "check b*alpha=a*s: ok"));

    RunResult gcd = run_cli("oracle gcd t^2 t^3");
    CHECK(gcd.code == 0);
    CHECK(contains(gcd.out, "g=1*t^2"));
    CHECK(contains(gcd.out, "check g=a*u+b*v: ok"));

    RunResult dpr = run_cli("oracle dpr 1 0 1 0");
    CHECK(dpr.code == 0);
    CHECK(contains(dpr.out, "false"));

    RunResult dpr2 = run_cli("oracle dpr 1 1 1 0");
    CHECK(dpr2.code == 0);
    CHECK(contains(dpr2.out, "true"));

    RunResult pp = run_cli("--ring local:4 oracle pp 2 3 t 1+t");
    CHECK(pp.code == 0);
    CHECK(contains(pp.out, "false"));

    RunResult pp2 = run_cli("--ring local:4 oracle pp 2 4 t 1+t");
    CHECK(pp2.code == 0);
    CHECK(contains(pp2.out, "true"));

    RunResult pp0q = run_cli("--ring twovalued:3 oracle pp0 3 1 \"in((t)/(1+t))\"");
    CHECK(pp0q.code == 0);
    CHECK(contains(pp0q.out, "true"));

    RunResult unknown = run_cli("oracle frobnicate 1 2");
    CHECK(unknown.code == 2);
}

TEST_CASE("eval reports the invariant of a pair on a cut sub-quotient") {
    RunResult q = run_cli("eval m0 \">=0\" \">1\" \"[x=x / ann(t)]\"");
    CHECK(q.code == 0);
    CHECK(contains(q.out, "q=5"));

    RunResult one = run_cli("eval m0 \">=0\" \">=1\" \"[x=x / ann(t)]\"");
    CHECK(one.code == 0);
    CHECK(contains(one.out, "1"));

    RunResult inf = run_cli("eval m0 full zero \"[x=x / ann(t)]\"");
    CHECK(inf.code == 0);
    CHECK(contains(inf.out, "infinite"));

    RunResult bad = run_cli("eval m7 full zero \"[x=x / ann(t)]\"");
    CHECK(bad.code == 2);
}

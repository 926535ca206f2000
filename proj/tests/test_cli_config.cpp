#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "rscc/config.hpp"
#include "rscc/radial_julia.hpp"
#include "rscc/scenario.hpp"

using namespace rscc;

namespace {

const char* kLadderConf = R"(
[scenario]
name = halving-ladder
fiber = sphere
initial = 1

[state]
kind = ladder
extra-label = 2
extra-value = 2

[indices]
names = x1 x2

[update]
family = ladder
x2-to-extra = true

[transition]
family = ladder-exp
inverse-exponent = true

[tau.x1]
map = 1 monomial 1 2

[tau.x2]
map = 0.5 monomial 1 2
map = 0.5 monomial 0.5 2

[radial-classes]
names = Ladder Zero Two
assign-ladder = Ladder
assign-zero = Zero
assign-extra = Two
class = Ladder : x1 -> Ladder ; x2:0 -> Two ; x2:1 -> Two
class = Zero : x1 -> Zero
class = Two : x2:0 -> Two ; x2:1 -> Two
)";

ScenarioSpec parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario_config(in);
}

// what an invalid_argument from the callable says, empty when nothing is thrown
template <typename F>
std::string parse_complaint(F&& f) {
    try {
        f();
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return "";
}

struct CliResult {
    int exit = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("RSCC_CLI");
    const std::string cmd = "'" + std::string(bin ? bin : "./rscc") + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("a config file reproduces the builtin ladder exactly") {
    const auto parsed = parse_text(kLadderConf);
    const auto ref = builtin_scenario("jump-annulus");

    CHECK(parsed.name == "halving-ladder");
    CHECK(parsed.initial == StatePoint::ladder(1));
    CHECK_NOTHROW(validate_radial_classes(parsed));

    for (int n : {1, 2, 5, 9}) {
        const auto a = transition_probs(parsed, StatePoint::ladder(n));
        const auto b = transition_probs(ref, StatePoint::ladder(n));
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
    CHECK(update_state(parsed, StatePoint::ladder(3), 1) == parse_state(parsed, "2"));
    CHECK(cylinder_prob(parsed, StatePoint::ladder(1), {0, 0}) ==
          cylinder_prob(ref, StatePoint::ladder(1), {0, 0}));

    const auto sa = statewise_julia_radial(parsed);
    const auto sb = statewise_julia_radial(ref);
    REQUIRE(sa.size() == sb.size());
    for (const auto& [name, set] : sa) CHECK(radial_equal(set, sb.at(name), 1e-9));

    const auto cert = kernel_julia_depth(parsed, parse_state(parsed, "2"), 4);
    CHECK(cert.verdict == KernelCertificate::Verdict::EmptyAtDepth);
    CHECK(cert.depth == 2);
}

TEST_CASE("config parse errors carry line numbers and reasons") {
    // a required section is absent entirely
    auto msg = parse_complaint([] { parse_text("[scenario]\nname = x\ninitial = 1\n"); });
    CHECK(msg.find("missing [state]") != std::string::npos);

    // keys must live inside a section
    msg = parse_complaint([] { parse_text("name = x\n"); });
    CHECK(msg.find("outside any section") != std::string::npos);
    CHECK(msg.find("line 1") != std::string::npos);

    // malformed numerics name the offending line
    std::string bad = kLadderConf;
    const auto pos = bad.find("map = 0.5 monomial 0.5 2");
    bad.replace(pos, 24, "map = lots monomial 1 2");
    msg = parse_complaint([&] { parse_text(bad); });
    CHECK(msg.find("expected a number") != std::string::npos);

    // unknown index names inside a class edge
    std::string badIdx = kLadderConf;
    const auto ep = badIdx.find("class = Zero : x1 -> Zero");
    badIdx.replace(ep, 25, "class = Zero : zz -> Zero");
    msg = parse_complaint([&] { parse_text(badIdx); });
    CHECK(msg.find("unknown index") != std::string::npos);

    // an edge without an arrow
    std::string badEdge = kLadderConf;
    const auto ap = badEdge.find("class = Zero : x1 -> Zero");
    badEdge.replace(ap, 25, "class = Zero : x1    Zero");
    msg = parse_complaint([&] { parse_text(badEdge); });
    CHECK(msg.find("->") != std::string::npos);

    // unterminated section header
    msg = parse_complaint([] { parse_text("[scenario\nname = x\n"); });
    CHECK(msg.find("unterminated") != std::string::npos);

    CHECK_THROWS_AS(load_scenario_file("/nonexistent/path.conf"), std::invalid_argument);
}

TEST_CASE("the worked example file in doc/ parses and validates") {
    // ctest exports the source-tree path; fall back to build-tree-relative
    // guesses so the binary still works when run by hand
    std::vector<std::string> candidates;
    if (const char* env = std::getenv("RSCC_DOC")) candidates.push_back(env);
    candidates.push_back("../doc/scenario-example.conf");
    candidates.push_back("doc/scenario-example.conf");
    ScenarioSpec spec;
    bool loaded = false;
    for (const auto& path : candidates) {
        try {
            spec = load_scenario_file(path);
            loaded = true;
            break;
        } catch (const std::invalid_argument&) {
        }
    }
    REQUIRE(loaded);
    CHECK(spec.name == "halving-ladder");
    CHECK_NOTHROW(validate_radial_classes(spec));
}

TEST_CASE("cli: kernel certificate to stdout") {
    const auto r = run_cli("kernel --state 2 --depth 3");
    CHECK(r.exit == 0);
    CHECK(r.out.find("EmptyAtDepth") != std::string::npos);
    CHECK(r.out.find("\"depth\": 2") != std::string::npos);
}

TEST_CASE("cli: exit codes sort failures by kind") {
    CHECK(run_cli("frobnicate").exit == 2);                      // unknown verb
    CHECK(run_cli("kernel --scenario /no/such.conf").exit == 2); // unreadable scenario
    CHECK(run_cli("kernel --state 7/3").exit == 2);              // unparseable state
    // full enumeration of a branching chain at depth 30 overruns the word cap
    CHECK(run_cli("words --scenario reinforcement --steps 30").exit == 3);
}

TEST_CASE("cli: simulate emits csv with a meta comment") {
    const auto r = run_cli("simulate --steps 5 --seed 3");
    CHECK(r.exit == 0);
    CHECK(r.out.rfind("# ", 0) == 0);
    CHECK(r.out.find(" scenario=jump-annulus") != std::string::npos);
    CHECK(r.out.find("log_prob=") != std::string::npos);
    CHECK(r.out.find("step,index,state") != std::string::npos);
}

TEST_CASE("cli: statewise radial table lands on the annulus") {
    const auto r = run_cli("julia-radial");
    CHECK(r.exit == 0);
    CHECK(r.out.find("class,s_lo,s_hi,r_lo,r_hi") != std::string::npos);

    const auto pos = r.out.find("\nTwo,");
    REQUIRE(pos != std::string::npos);
    double sLo = 0.0, sHi = 0.0, rLo = 0.0, rHi = 0.0;
    REQUIRE(std::sscanf(r.out.c_str() + pos + 1, "Two,%lf,%lf,%lf,%lf", &sLo, &sHi, &rLo, &rHi) ==
            4);
    CHECK(std::abs(rLo - 1.0) <= 1e-6);
    CHECK(std::abs(rHi - 2.0) <= 1e-6);
}

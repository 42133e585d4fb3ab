#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace lt;

namespace {

bool models_equal(const Model& a, const Model& b) {
    if (a.ivp.var_names != b.ivp.var_names) return false;
    if (a.ivp.v0 != b.ivp.v0) return false;
    if (a.ivp.field.drifts.size() != b.ivp.field.drifts.size()) return false;
    for (std::size_t i = 0; i < a.ivp.field.drifts.size(); ++i)
        if (!(a.ivp.field.drifts[i] == b.ivp.field.drifts[i])) return false;
    if (a.templates.size() != b.templates.size()) return false;
    for (std::size_t i = 0; i < a.templates.size(); ++i)
        if (!(a.templates[i].terms() == b.templates[i].terms())) return false;
    return true;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(LIEMIN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("round trip of the shipped models") {
    for (const char* name : {"example1.ode", "circle.ode", "pendulum.ode", "linear10.ode"}) {
        Model m = load_model(model_path(name));
        Model again = parse_model(render_model(m));
        CHECK(models_equal(m, again));
    }
}

TEST_CASE("templates in model files") {
    Model m = parse_model(
        "vars: x, y\n"
        "x' = y\n"
        "y' = -x\n"
        "init: x=0, y=1\n"
        "template: a1*x + a2*y\n"
        "template: a1*x^2\n");
    REQUIRE(m.templates.size() == 2);
    CHECK(m.templates[0].nparams() == 2);
    CHECK(models_equal(m, parse_model(render_model(m))));
}

TEST_CASE("model validation errors") {
    CHECK_THROWS(parse_model("vars: x\ninit: x=0\n"));                       // missing equation
    CHECK_THROWS(parse_model("vars: x, x\nx' = x\ninit: x=0\n"));            // duplicate var
    CHECK_THROWS(parse_model("vars: x\nx' = x\nx' = 2*x\ninit: x=0\n"));     // duplicate eq
    CHECK_THROWS(parse_model("vars: x\nx' = x\n"));                          // missing init
    CHECK_THROWS(parse_model("vars: x\nx' = x + q\ninit: x=0\n"));           // unknown symbol
    CHECK_THROWS(parse_model("vars:\n"));                                    // no variables
}

TEST_CASE("cli exit codes") {
    std::string example1 = model_path("example1.ode");
    std::string pendulum = model_path("pendulum.ode");
    CHECK(run_cli("taylor " + example1 + " x-y --order 4") == 0);
    CHECK(run_cli("check-equiv " + example1 + " x y") == 0);
    CHECK(run_cli("check-equiv " + example1 + " x z") == 1);
    CHECK(run_cli("certify " + example1 + " x") == 1);
    CHECK(run_cli("check-equiv /nonexistent.ode x y") == 2);
    CHECK(run_cli("taylor " + example1 + " 'x + q' --order 4") == 2);
    CHECK(run_cli("invariants " + pendulum + " --degree 2 --cap 2") == 3);
}

TEST_CASE("json reports are deterministic") {
    std::string out1 = "/tmp/liemin_rep1.json";
    std::string out2 = "/tmp/liemin_rep2.json";
    std::string args = "invariants " + model_path("example1.ode");
    REQUIRE(run_cli(args + " --json " + out1) == 0);
    REQUIRE(run_cli(args + " --json " + out2) == 0);
    std::string a = slurp(out1), b = slurp(out2);
    // Strip the timing line and the command echo (it embeds the output path).
    auto strip = [](std::string s) {
        for (const char* key : {"elapsed_ms", "\"command\""}) {
            auto pos = s.find(key);
            auto end = s.find('\n', pos);
            s = s.substr(0, pos) + s.substr(end);
        }
        return s;
    };
    CHECK(strip(a) == strip(b));
    CHECK(a.find("\"m\": 1") != std::string::npos);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("reduced model written by the cli parses back") {
    std::string out = "/tmp/liemin_reduced.ode";
    REQUIRE(run_cli("minimize " + model_path("example1.ode") + " --out " + out) == 0);
    Model red = load_model(out);
    CHECK(red.ivp.dim() == 2);
    std::remove(out.c_str());
    std::remove((out + ".json").c_str());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <sys/wait.h>

#include "json.hpp"

#include "cgw/config.hpp"

using namespace cgw;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run_cli(const std::string& args)
{
    const char* exe = std::getenv("CGW_CLI");
    REQUIRE_MESSAGE(exe, "CGW_CLI must point at the cgw binary");
    const std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& text)
{
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("config round trip")
{
    RunConfig c;
    c.quad.rel_tol = 1e-9;
    c.quad.fixed_level = 5;
    c.ladder.points = 9;
    c.thresholds.log_zero_rel = 3e-4;
    c.format = "csv";
    c.seed = 77;
    const RunConfig d = config_from_json_text(config_to_json_text(c));
    CHECK(d.quad.rel_tol == c.quad.rel_tol);
    CHECK(d.quad.fixed_level == 5);
    CHECK(d.ladder.points == 9);
    CHECK(d.thresholds.log_zero_rel == 3e-4);
    CHECK(d.format == "csv");
    CHECK(d.seed == 77);
}

TEST_CASE("partial configs keep defaults")
{
    const RunConfig d = config_from_json_text(R"({"ladder": {"points": 11}})");
    CHECK(d.ladder.points == 11);
    CHECK(d.quad.rel_tol == RunConfig{}.quad.rel_tol);
    CHECK(d.format == "json");
}

TEST_CASE("bad configs are rejected")
{
    CHECK_THROWS_AS(config_from_json_text("{"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text("[1, 2]"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text(R"({"quad": {"rel_tol": -1}})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text(R"({"quad": {"rel_tol": "tiny"}})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text(R"({"format": "xml"})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text(R"({"ladder": {"points": 1}})"), std::invalid_argument);
    CHECK_THROWS_AS(load_config("/nonexistent/cgw.json"), std::invalid_argument);
}

TEST_CASE("thread count from the environment")
{
    setenv("CGW_THREADS", "3", 1);
    CHECK(thread_count() == 3);
    setenv("CGW_THREADS", "zero", 1);
    CHECK(thread_count() >= 1);
    unsetenv("CGW_THREADS");
}

TEST_CASE("parallel_for visits every index once and rethrows")
{
    setenv("CGW_THREADS", "4", 1);
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, [&](int i) { hits[static_cast<size_t>(i)]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    try {
        parallel_for(50, [](int i) {
            if (i == 7 || i == 31) throw std::runtime_error(std::to_string(i));
        });
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "7");
    }
    // nested calls run inline
    std::atomic<int> inner{0};
    parallel_for(4, [&](int) { parallel_for(5, [&](int) { inner++; }); });
    CHECK(inner.load() == 20);
    unsetenv("CGW_THREADS");
}

TEST_CASE("cli: enumerate")
{
    auto r = run_cli("enumerate --n-arcs 4");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["count"] == 14);
    CHECK(j["diagrams"][0]["parens"] == "()()()()");
}

TEST_CASE("cli: usage and numerical errors")
{
    CHECK(run_cli("eval --n-arcs 2 --basis 1 --kappa 9 --points 0,1,2,3").code == 2);
    CHECK(run_cli("eval --n-arcs 2 --basis 1 --kappa 5 --points 0,1,2").code == 2);
    CHECK(run_cli("eval --n-arcs 2 --basis 1 --kappa 5 --points 0,2,1,3").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("weights --n-arcs 2 --kappa 6 --points 0,1,2,3").code == 1);
}

TEST_CASE("cli: outputs are deterministic")
{
    const std::string cmd = "crossing --n-arcs 2 --basis 1 --kappa 5 --points 0,1,2.2,3.5";
    auto a = run_cli(cmd), b = run_cli(cmd);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto j = json::parse(a.out);
    CHECK(j["sum"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cli: config file and format")
{
    const auto path = temp_file("cgw_cli_test.json", R"({"format": "csv"})");
    auto r = run_cli("weights --n-arcs 2 --kappa 5 --points 0,1,2,3 --config " + path);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("index,parens,Pi\n", 0) == 0);
    auto m = run_cli("meander --n-arcs 2 --fugacity 0.5 --format csv");
    REQUIRE(m.code == 0);
    CHECK(m.out == "0.25,0.5\n0.5,0.25\n");
    const auto bad = temp_file("cgw_cli_bad.json", R"({"quad": {"rel_tol": 0}})");
    CHECK(run_cli("weights --n-arcs 2 --kappa 5 --points 0,1,2,3 --config " + bad).code == 2);
}

TEST_CASE("cli: cft and verify")
{
    auto r = run_cli("cft --kappa 6");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["minimal_model"]["p"] == 3);
    CHECK(j["minimal_model"]["p_prime"] == 2);
    CHECK(run_cli("verify --suite combinatorics").code == 0);
    CHECK(run_cli("verify --suite kappa6").code == 0);
    CHECK(run_cli("verify --suite nonsense").code == 2);
}

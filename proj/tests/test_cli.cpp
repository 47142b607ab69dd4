#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "nopath");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream log;
    return nopath::cli::main_entry(static_cast<int>(argv.size()), argv.data(), log);
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("nopath_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {
TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"frobnicate", "--example", "A"}) == 2);
    CHECK(run_cli({"build"}) == 2);
    CHECK(run_cli({"build", "--example", "Z"}) == 2);
    CHECK(run_cli({"build", "--example", "A", "--window", "1,2,3"}) == 2);
    CHECK(run_cli({"build", "--example", "A", "--grid-n", "3"}) == 2);
    CHECK(run_cli({"build", "--example", "A", "--bogus"}) == 2);
    CHECK(run_cli({"--help"}) == 0);
}

TEST_CASE("KEXX passes and output is byte identical") {
    const fs::path a = scratch("kexx_a"), b = scratch("kexx_b");
    CHECK(run_cli({"all", "--example", "KEXX", "--out", a.string()}) == 0);
    CHECK(run_cli({"all", "--example", "KEXX", "--out", b.string()}) == 0);
    for (const char* f : {"manifest.json", "report.json", "bifurcation.svg"}) {
        REQUIRE(fs::exists(a / "KEXX" / f));
        CHECK(slurp(a / "KEXX" / f) == slurp(b / "KEXX" / f));
    }
}

TEST_CASE("Example A build is byte identical") {
    const fs::path a = scratch("a_a"), b = scratch("a_b");
    CHECK(run_cli({"build", "--example", "A", "--grid-n", "256", "--out", a.string()}) == 0);
    CHECK(run_cli({"build", "--example", "A", "--grid-n", "256", "--out", b.string()}) == 0);
    for (const auto& e : fs::directory_iterator(a / "A")) {
        CHECK(slurp(e.path()) == slurp(b / "A" / e.path().filename()));
    }
}

TEST_CASE("verify needs an intact manifest") {
    const fs::path d = scratch("manifest");
    CHECK(run_cli({"verify", "--example", "KEXX", "--out", d.string()}) == 2);
    CHECK(run_cli({"build", "--example", "KEXX", "--out", d.string()}) == 0);
    CHECK(run_cli({"verify", "--example", "KEXX", "--out", d.string()}) == 0);
    std::ofstream(d / "KEXX" / "manifest.json") << "{\"config\": 3";
    CHECK(run_cli({"verify", "--example", "KEXX", "--out", d.string()}) == 2);
    std::ofstream(d / "KEXX" / "manifest.json") << "{}";
    CHECK(run_cli({"render", "--example", "KEXX", "--out", d.string()}) == 2);
}

TEST_CASE("config file, unknown keys and flag precedence") {
    const fs::path d = scratch("config");
    fs::create_directories(d);
    std::ofstream(d / "bad.json") << R"({"example": "KEXX", "colour": "red"})";
    CHECK(run_cli({"build", "--config", (d / "bad.json").string()}) == 2);
    CHECK(run_cli({"build", "--config", (d / "missing.json").string()}) == 2);
    std::ofstream(d / "good.json") << R"({"example": "KEXX", "out": ")" + (d / "from_file").string() + R"("})";
    CHECK(run_cli({"build", "--config", (d / "good.json").string()}) == 0);
    CHECK(fs::exists(d / "from_file" / "KEXX" / "manifest.json"));
    CHECK(run_cli({"build", "--config", (d / "good.json").string(), "--out", (d / "from_flag").string()}) == 0);
    CHECK(fs::exists(d / "from_flag" / "KEXX" / "manifest.json"));
    const auto cfg = nopath::cli::parse(
        5, std::vector<const char*>{"nopath", "build", "--config", (d / "good.json").c_str(), "--stage=0"}.data());
    CHECK(cfg.build.stage == 0);
    CHECK(cfg.out == (d / "from_file").string());
}

TEST_CASE("domain failures exit 2") {
    const fs::path d = scratch("stage");
    CHECK(run_cli({"build", "--example", "A", "--stage", "3", "--out", d.string()}) == 2);
}

TEST_CASE("Example B exits with its failure count") {
    const fs::path d = scratch("b");
    CHECK(run_cli({"all", "--example", "B", "--grid-n", "512", "--out", d.string()}) == 1);
    CHECK(fs::exists(d / "B" / "report.json"));
    CHECK(fs::exists(d / "B" / "chain_stages.svg"));
}
}

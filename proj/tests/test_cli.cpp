#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_env(const std::string& env, const std::string& args) {
    std::string cmd = env + " " + std::string(LPF_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

RunResult run(const std::string& args) {
    std::string cmd = std::string(LPF_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("grid parsing and basic rows") {
    auto r = run("compare --x 1e4 --tol 1e-10");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("x,N_exact,T0_exact") == 0);
    CHECK(r.out.find("10000,593,402,") != std::string::npos);

    auto grid = run("asym --x 1e6:1e8:10 --r 0");
    CHECK(grid.exit_code == 0);
    // shorthand expands to 1e6, 1e7, 1e8
    CHECK(grid.out.find("\n1000000,") != std::string::npos);
    CHECK(grid.out.find("\n10000000,") != std::string::npos);
    CHECK(grid.out.find("\n100000000,") != std::string::npos);
}

TEST_CASE("rho evaluates the closed form") {
    auto r = run("rho --u 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0.306852819440055") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("exact").exit_code == 2);                    // missing --x
    CHECK(run("exact --x bogus").exit_code == 2);          // malformed number
    CHECK(run("exact --x 1e4,1e3").exit_code == 2);        // not increasing
    CHECK(run("frobnicate").exit_code == 2);               // unknown subcommand
    CHECK(run("exact --x 1e4 --tol 1").exit_code == 2);    // tolerance out of range
    CHECK(run("psi --x 100 --y 10 --method wat").exit_code == 2);
}

TEST_CASE("json rows carry the schema version") {
    auto r = run("exact --x 100 --r 1 --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"schema_version\":1") != std::string::npos);
    CHECK(r.out.find("\"N\":\"25\"") != std::string::npos);
}

TEST_CASE("deterministic output, cold and warm cache") {
    auto a = run("selftest");
    auto b = run("selftest");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "lpf_cli_test_cache";
    std::filesystem::remove_all(dir);
    std::string base = "compare --x 1e3,1e4 --cache-dir " + dir.string();
    auto cold = run(base);
    auto warm = run(base);
    CHECK(cold.exit_code == 0);
    CHECK(cold.out == warm.out);
    CHECK(std::filesystem::exists(dir));  // cache file was written
    std::filesystem::remove_all(dir);
}

TEST_CASE("thread count does not change the rows") {
    auto one = run("exact --x 2e5 --r 1,2 --threads 1");
    auto four = run("exact --x 2e5 --r 1,2 --threads 4");
    CHECK(one.exit_code == 0);
    CHECK(one.out == four.out);
}

TEST_CASE("budget overruns exit 4") {
    CHECK(run("exact --x 2e10").exit_code == 4);  // beyond the scan maximum
}

TEST_CASE("cache dir via environment variable") {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "lpf_cli_env_cache";
    std::filesystem::remove_all(dir);
    auto r = run_env("LPF_CACHE_DIR=" + dir.string(), "rho --u 2,3");
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(dir));
    std::filesystem::remove_all(dir);
}

TEST_CASE("psi subcommand output") {
    auto r = run("psi --x 1000000 --y 1000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1000000,1000,344299,") != std::string::npos);
}

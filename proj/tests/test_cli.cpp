// Subprocess tests of the CLI contract; the binary path arrives via the
// LEVYCLI environment variable set by CTest.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string cli_path() {
    const char* p = std::getenv("LEVYCLI");
    return p ? p : "";
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_file = "/tmp/levycli_test_out.txt";
    const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return {WEXITSTATUS(rc), text};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("cli: classify catalog gamma and the exit-code contract") {
    if (cli_path().empty()) return; // only meaningful under ctest
    write_file("/tmp/cli_gamma.json",
               R"({"schema_version":1,"catalog":{"name":"gamma","params":{"alpha":2,"lambda":1}}})");
    auto r = run("classify /tmp/cli_gamma.json --max-n 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"L1\": \"no\"") != std::string::npos);
    CHECK(r.out.find("\"Lf\": \"yes\"") != std::string::npos);
}

TEST_CASE("cli: inline density equals catalog verdicts") {
    if (cli_path().empty()) return;
    write_file("/tmp/cli_inline.json",
               R"({"schema_version":1,"triple":{"pos_density":"exp(-r)/r","neg_density":"0"}})");
    auto r = run("classify /tmp/cli_inline.json --max-n 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"L\": \"yes\"") != std::string::npos);
    CHECK(r.out.find("\"Lf\": \"yes\"") != std::string::npos);
}

TEST_CASE("cli: malformed expression exits 1 with a caret") {
    if (cli_path().empty()) return;
    write_file("/tmp/cli_bad.json",
               R"({"schema_version":1,"triple":{"pos_density":"exp(-r","neg_density":"0"}})");
    auto r = run("classify /tmp/cli_bad.json");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find('^') != std::string::npos);
}

TEST_CASE("cli: factorize exit codes for class-L failures") {
    if (cli_path().empty()) return;
    write_file("/tmp/cli_cp.json",
               R"({"schema_version":1,"catalog":{"name":"comp-poisson-exp"}})");
    auto r = run("factorize /tmp/cli_cp.json");
    CHECK(r.exit_code == 3);

    // bessel: class L but no factorization property -> exit 4
    write_file("/tmp/cli_bessel.json",
               R"({"schema_version":1,"catalog":{"name":"bessel"}})");
    auto r4 = run("factorize /tmp/cli_bessel.json");
    CHECK(r4.exit_code == 4);

    write_file("/tmp/cli_g21.json",
               R"({"schema_version":1,"catalog":{"name":"gamma","params":{"alpha":2,"lambda":1}}})");
    auto r0 = run("factorize /tmp/cli_g21.json --emit-cf /tmp/cli_cf.csv");
    CHECK(r0.exit_code == 0);
    std::ifstream csv("/tmp/cli_cf.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,re_mu,im_mu,re_nu,im_nu,re_I_rho,im_I_rho");
}

TEST_CASE("cli: verify is deterministic byte for byte") {
    if (cli_path().empty()) return;
    write_file("/tmp/cli_g21.json",
               R"({"schema_version":1,"catalog":{"name":"gamma","params":{"alpha":2,"lambda":1}}})");
    const std::string flags = "verify /tmp/cli_g21.json --n 4000 --seed 7 --mesh 0.2";
    auto a = run(flags);
    auto b = run(flags);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("cli: sample repeats are byte-identical") {
    if (cli_path().empty()) return;
    write_file("/tmp/cli_g11.json",
               R"({"schema_version":1,"catalog":{"name":"gamma","params":{"alpha":1,"lambda":1}}})");
    const std::string flags = "sample /tmp/cli_g11.json --n 2000 --seed 3";
    auto a = run(flags);
    auto b = run(flags);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cli: transform emits exponent and density tables") {
    if (cli_path().empty()) return;
    write_file("/tmp/cli_g21b.json",
               R"({"schema_version":1,"catalog":{"name":"gamma","params":{"alpha":2,"lambda":1}}})");
    auto r = run("transform /tmp/cli_g21b.json --map invI --grid-nodes 21");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"exponent\"") != std::string::npos);
    CHECK(r.out.find("\"density\"") != std::string::npos);
}

TEST_CASE("cli: catalog listing") {
    if (cli_path().empty()) return;
    auto r = run("catalog");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("levy-area") != std::string::npos);
    CHECK(r.out.find("wenocur") != std::string::npos);
}

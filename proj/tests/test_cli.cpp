#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path work = fs::temp_directory_path() / "mconv_cli_test";

int run(const std::string& args) {
    const std::string cmd = std::string(MCONV_BINARY) + " " + args + " > " + (work / "stdout.txt").string() + " 2> " +
                            (work / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string file(const std::string& name) { return (work / name).string(); }

nlohmann::json load(const std::string& name) {
    std::ifstream in(work / name);
    return nlohmann::json::parse(in);
}

struct Workdir {
    Workdir() { fs::create_directories(work); }
    ~Workdir() { fs::remove_all(work); }
};

} // namespace

TEST_CASE("cli exit codes") {
    Workdir w;
    CHECK(run("") == 2);
    CHECK(run("pipeline --family 1 --m 4 --r 8") == 2);
    CHECK(run("construct --m 4 --r 8") == 2);
    CHECK(run("construct --m 4 --r 9 -o " + file("t.json")) == 0);
    CHECK(run("convolve --lambda 1 " + file("t.json")) == 2);
    CHECK(run("convolve " + file("missing.json")) == 2);
    CHECK(run("certify --mode sl " + file("t.json")) == 2);
}

TEST_CASE("cli construct, twist, convolve, reduce, certify") {
    Workdir w;
    REQUIRE(run("construct --m 4 --r 9 -o " + file("t.json")) == 0);
    REQUIRE(run("rank-one --pattern N1 --r 9 -o " + file("n1.json")) == 0);
    REQUIRE(run("convolve " + file("t.json") + " -o " + file("mc.json")) == 0);
    CHECK(load("mc.json")["n"] == 14);
    REQUIRE(run("tensor " + file("mc.json") + " " + file("n1.json") + " -o " + file("tw.json")) == 0);
    REQUIRE(run("convolve " + file("tw.json") + " -o " + file("mc2.json")) == 0);
    CHECK(load("mc2.json")["n"] == 27);
    CHECK(run("selfcheck " + file("t.json")) == 0);
    CHECK(run("analyze " + file("t.json")) == 0);
    REQUIRE(run("reduce --ell 5 " + file("t.json") + " -o " + file("t5.json")) == 0);
    CHECK(load("t5.json")["field"]["kind"] == "finite");
    // T_{4,9} has an entry of determinant -1
    CHECK(run("certify --mode sl " + file("t5.json") + " -o " + file("cert.json")) == 1);
    CHECK(load("cert.json")["verdict"] == false);
}

TEST_CASE("cli pipeline") {
    Workdir w;
    CHECK(run("pipeline --family 1 --m 4 --r 9 --q 5 --report " + file("report.json")) == 0);
    const auto rep = load("report.json");
    CHECK(rep["rank"] == 27);
    CHECK(rep["certificate"]["verdict"] == true);
    CHECK(run("pipeline --family 1 --m 4 --r 9 --q 5 --mode slpm --report " + file("r2.json")) == 1);
    CHECK(run("pipeline --family 1 --m 4 --r 9 --q 7") == 2);
}

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lrc/json_io.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args) {
    const std::string cmd = std::string(LRC_BIN_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

const char* kTmp = "/tmp/lrc-cli-test";

} // namespace

TEST_CASE("cli: params artifact carries the exact constants") {
    std::filesystem::create_directories(kTmp);
    const std::string out = std::string(kTmp) + "/params.json";
    REQUIRE(run("params --alpha 1/2 --epsilon 1/2 --d 2 --n 3 -o " + out) == 0);
    const lrc::Json j = lrc::parse_json(slurp(out));
    CHECK(j.at("params").at("K") == "3");
    CHECK(j.at("params").at("mu") == "1/12");
    CHECK(j.at("params").at("beta") == "1/24");
    CHECK(j.at("params").at("theta") == "1/11");
    CHECK(j.at("lower_bound").at("T") == 6);
    CHECK(j.at("lower_bound").at("f") == "1024");
    CHECK(j.at("version") == "0.1.0");
    CHECK(j.contains("config"));
}

TEST_CASE("cli: float rationals are rejected with exit 3") {
    CHECK(run("params --alpha 0.5 --epsilon 1/2 --d 2") == 3);
}

TEST_CASE("cli: malformed JSON input exits 3") {
    const std::string bad = std::string(kTmp) + "/bad.json";
    std::ofstream(bad) << "{not json";
    CHECK(run("check --code " + bad + " --lists " + bad + " --alpha 0/1") == 3);
}

TEST_CASE("cli: budget exhaustion exits 2") {
    const std::string code = std::string(kTmp) + "/code101.json";
    REQUIRE(run("sample --p 101 --n 4 --d 2 --seed 3 --full-rank -o " + code) == 0);
    CHECK(run("oracle --code " + code + " --alpha 0/1 --ell 2 --L 1 --budget 1000") == 2);
}

TEST_CASE("cli: sampling artifacts are byte-identical under one seed") {
    const std::string a = std::string(kTmp) + "/m1.json";
    const std::string b = std::string(kTmp) + "/m2.json";
    REQUIRE(run("sample --p 101 --n 4 --d 2 --seed 9 -o " + a) == 0);
    REQUIRE(run("sample --p 101 --n 4 --d 2 --seed 9 -o " + b) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("cli: attack on the worked instance verifies with exit 0") {
    const std::string code = std::string(kTmp) + "/code1031.json";
    const std::string out = std::string(kTmp) + "/attack.json";
    REQUIRE(run("sample --p 1031 --n 3 --d 2 --seed 17 --full-rank -o " + code) == 0);
    REQUIRE(run("attack --code " + code +
                " --alpha 1/2 --epsilon 1/2 --ell 300 --seed 4 -o " + out) == 0);
    const lrc::Json j = lrc::parse_json(slurp(out));
    CHECK(j.at("verified") == true);
    CHECK(j.at("plan").at("P") == "936");
}

TEST_CASE("cli: check subcommand reports counts") {
    const std::string code = std::string(kTmp) + "/code3.json";
    const std::string lists = std::string(kTmp) + "/lists3.json";
    REQUIRE(run("sample --p 3 --n 2 --d 2 --seed 1 --full-rank -o " + code) == 0);
    std::ofstream(lists) << R"({"p":3,"ell":3,"lists":[[0,1,2],[0,1,2]]})";
    const std::string out = std::string(kTmp) + "/check.json";
    REQUIRE(run("check --code " + code + " --lists " + lists + " --alpha 0/1 -o " + out) ==
            0);
    const lrc::Json j = lrc::parse_json(slurp(out));
    CHECK(j.at("report").at("count") == 9); // full lists capture everything
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = schurlab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count as CSV") {
    const auto r = run({"count", "--d", "3", "--r", "1", "--kind", "C", "--max-n", "12", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,value\n0,1\n1,0\n2,0\n3,0\n4,1\n5,1\n6,1\n7,1\n8,1\n9,1\n10,1\n11,2\n12,2\n");
}

TEST_CASE("count by number of parts") {
    const auto r = run({"count", "--d", "3", "--r", "1", "--kind", "B", "--max-n", "6", "--parts", "2", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n6,1\n") != std::string::npos);
}

TEST_CASE("series expansion") {
    const auto r = run({"series", "--name", "g3", "--d", "5", "--r", "2", "--trunc", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1 - q^2 - q^3 + q^4") != std::string::npos);
    const auto j = run({"series", "--name", "eta", "--d", "3", "--r", "1", "--trunc", "6", "--format", "json"});
    CHECK(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["offset24"] == 3);
}

TEST_CASE("verify exits 0 on identities and 1 on mutations") {
    CHECK(run({"verify", "--identity", "schur", "--d", "5", "--r", "2", "--trunc", "100"}).code == 0);
    CHECK(run({"verify", "--identity", "andrews-c31", "--trunc", "200"}).code == 0);
    const auto bad = run({"verify", "--identity", "andrews-c31", "--trunc", "60", "--mutate-index", "7", "--format", "json"});
    CHECK(bad.code == 1);
    const auto j = nlohmann::json::parse(bad.out);
    CHECK(j["passed"] == false);
    CHECK(j["first_mismatch"]["exponent"] == 7);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    const auto bad_params = run({"verify", "--identity", "schur", "--d", "4", "--r", "2"});
    CHECK(bad_params.code == 2);
    CHECK(bad_params.err.find("error") != std::string::npos);
    CHECK(run({"verify", "--identity", "nope"}).code == 2);
    CHECK(run({"count", "--d", "3", "--r", "1", "--format", "xml"}).code == 2);
    CHECK(run({"asymptotics", "convergence", "--d", "3", "--r", "1", "--n", "100000"}).code == 2);
}

TEST_CASE("help and version") {
    const auto h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("verify-all") != std::string::npos);
    CHECK(run({"--version"}).code == 0);
}

TEST_CASE("asymptotics subcommands") {
    const auto conv = run({"asymptotics", "convergence", "--d", "3", "--r", "1", "--n", "1000", "--n", "2000",
                           "--terms", "2", "--format", "csv"});
    CHECK(conv.code == 0);
    CHECK(conv.out.rfind("n,exact_log,estimate_log,ratio\n1000,", 0) == 0);
    CHECK(run({"asymptotics", "constants", "--d", "3", "--r", "1", "--format", "json"}).code == 0);
    CHECK(run({"asymptotics", "g-expansion", "--d", "3", "--r", "1", "--z", "0.2", "0.1", "0.05"}).code == 0);
    CHECK(run({"asymptotics", "f-near-one", "--d", "3", "--r", "1", "--which", "1", "--z", "0.1"}).code == 0);
}

TEST_CASE("crossover") {
    const auto r = run({"crossover", "--d-a", "5", "--r-a", "2", "--d-b", "5", "--r-b", "1", "--max-n", "2000",
                        "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "n0,n_max\n329,2000\n");
}

TEST_CASE("probability subcommands") {
    const auto e = run({"prob", "exact", "--d", "3", "--r", "1", "--q", "0.5", "--k", "0", "--format", "csv"});
    CHECK(e.code == 0);
    CHECK(e.out.find("0,0.87326") != std::string::npos);
    CHECK(run({"prob", "check", "--d", "5", "--r", "2", "--q", "0.4"}).code == 0);
    CHECK(run({"prob", "recurrence", "--d", "3", "--r", "1", "--q", "0.5", "--k-max", "6"}).code == 0);
    CHECK(run({"prob", "exact", "--d", "3", "--r", "1", "--q", "1.5"}).code == 2);
}

TEST_CASE("simulate") {
    const auto r = run({"simulate", "--d", "3", "--r", "1", "--q", "0.5", "--trials", "20000", "--seed", "42",
                        "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["trials"] == 20000);
    const auto again = run({"simulate", "--d", "3", "--r", "1", "--q", "0.5", "--trials", "20000", "--seed", "42",
                            "--workers", "3", "--format", "json"});
    CHECK(again.out == r.out);
}

TEST_CASE("verify-all quick and mutated") {
    CHECK(run({"verify-all", "--quick"}).code == 0);
    const auto bad = run({"verify-all", "--quick", "--mutate", "euler", "--format", "csv"});
    CHECK(bad.code == 1);
    CHECK(bad.out.rfind("id,title,passed,seconds,detail\n", 0) == 0);
}

TEST_CASE("relative output paths resolve against the output directory") {
    const auto dir = std::filesystem::temp_directory_path() / "schurlab_cli_test";
    std::filesystem::create_directories(dir);
    ::setenv(schurlab::cli::kOutDirEnv, dir.c_str(), 1);
    const auto r = run({"count", "--d", "3", "--r", "1", "--max-n", "3", "--format", "csv", "--output", "c.csv"});
    ::unsetenv(schurlab::cli::kOutDirEnv);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream file(dir / "c.csv");
    std::stringstream contents;
    contents << file.rdbuf();
    CHECK(contents.str() == "n,value\n0,1\n1,1\n2,1\n3,1\n");
    std::filesystem::remove_all(dir);
}

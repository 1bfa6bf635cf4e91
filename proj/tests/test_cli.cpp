#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

// CLI_BINARY_PATH is injected by the build so the tests drive the real binary.

namespace {

using Json = nlohmann::ordered_json;

struct CommandResult {
    int status = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    const std::string command = std::string(CLI_BINARY_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
    const int raw = pclose(pipe);
    res.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return res;
}

std::filesystem::path write_temp_ini(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    REQUIRE(out.good());
    return path;
}

// Split captured stdout into non-empty lines.
std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("count emits the stable envelope with exact root data") {
    const CommandResult res = run_cli("count -p 5 -- -1 0 1");
    REQUIRE(res.status == 0);
    const Json j = Json::parse(res.output);
    for (const char* key : {"command", "prime", "params", "result", "seed", "version"})
        CHECK(j.contains(key));
    CHECK(j["command"] == "count");
    CHECK(j["prime"] == 5);
    CHECK(j["seed"].is_null()); // counting is deterministic, no seed involved
    CHECK(j["result"]["total"] == 2);
    const auto per = j["result"]["per_residue"];
    REQUIRE(per.size() == 5);
    CHECK(per[1] == 1); // X^2 - 1 has roots 1 and -1 = 4 in Z_5
    CHECK(per[4] == 1);
    CHECK(per[0] == 0);
}

TEST_CASE("count rejects a composite modulus with the usage exit code") {
    const CommandResult res = run_cli("count -p 6 -- 1 1");
    CHECK(res.status == 2);
}

TEST_CASE("moments reports exact stable values in json") {
    const CommandResult res = run_cli("moments -p 2 -d 2 --format json");
    REQUIRE(res.status == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["command"] == "moments");
    CHECK(j["result"]["series_identity_check"] == true);
    const auto& rows = j["result"]["rows"];
    REQUIRE(rows.size() == 3);
    CHECK(rows[1]["gamma"]["num"] == "1");
    CHECK(rows[1]["gamma"]["den"] == "3");
    CHECK(rows[2]["gamma"]["num"] == "13");
    CHECK(rows[2]["gamma"]["den"] == "558");
}

TEST_CASE("moments csv starts with the fixed header") {
    const CommandResult res = run_cli("moments -p 2 -d 1 --format csv");
    REQUIRE(res.status == 0);
    const auto lines = lines_of(res.output);
    REQUIRE(!lines.empty());
    CHECK(lines[0] == "n,d,alpha_num,alpha_den,beta_num,beta_den");
    CHECK(lines.size() == 1 + 3 * 2); // n in 0..2, d in 0..1
}

TEST_CASE("simulate reads a config file and cli flags override it") {
    const auto ini = write_temp_ini("padicli_linear.ini",
                                    "mode = estimate\n"
                                    "prime = 3\n"
                                    "kind = finite\n"
                                    "values = -1,1\n"
                                    "degree = 1\n"
                                    "d = 1\n"
                                    "samples = 60\n"
                                    "seed = 7\n"
                                    "workers = 1\n");
    const CommandResult res = run_cli("simulate " + ini.string());
    REQUIRE(res.status == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["command"] == "simulate");
    CHECK(j["prime"] == 3);
    CHECK(j["seed"] == 7);
    CHECK(j["result"]["mean"] == 1.0); // a linear polynomial has exactly one root
    CHECK(j["result"]["mean_exact"]["num"] == "1");
    CHECK(j["result"]["mean_exact"]["den"] == "1");

    // --d overrides the file: binom(1, 3) = 0 for every sample
    const CommandResult over = run_cli("simulate " + ini.string() + " --d 3");
    REQUIRE(over.status == 0);
    const Json jo = Json::parse(over.output);
    CHECK(jo["result"]["mean"] == 0.0);
    CHECK(jo["params"]["d"] == 3);
    std::filesystem::remove(ini);
}

TEST_CASE("simulate refuses a model with no collision deficit") {
    const auto ini = write_temp_ini("padicli_degenerate.ini",
                                    "mode = estimate\n"
                                    "prime = 2\n"
                                    "kind = finite\n"
                                    "values = -1,1\n" // both odd: tau = 0
                                    "degree = 5\n"
                                    "samples = 10\n");
    const CommandResult res = run_cli("simulate " + ini.string());
    CHECK(res.status == 3);
    CHECK(res.output.find("model assumption violated") != std::string::npos);
    std::filesystem::remove(ini);
}

TEST_CASE("simulate rejects an unknown config key with a located message") {
    const auto ini = write_temp_ini("padicli_badkey.ini",
                                    "mode = estimate\n"
                                    "prime = 3\n"
                                    "kind = finite\n"
                                    "values = -1,1\n"
                                    "sample = 10\n"); // misspelled key
    const CommandResult res = run_cli("simulate " + ini.string());
    CHECK(res.status == 2);
    CHECK(res.output.find("sample") != std::string::npos);
    std::filesystem::remove(ini);
}

TEST_CASE("verify streams one line per criterion and a summary") {
    const CommandResult res = run_cli("verify exact --seed 42 --workers 2");
    REQUIRE(res.status == 0);
    const auto lines = lines_of(res.output);
    REQUIRE(lines.size() >= 2);
    const Json summary = Json::parse(lines.back());
    CHECK(summary["command"] == "verify");
    CHECK(summary["prime"].is_null()); // the suite spans several primes
    CHECK(summary["result"]["all_passed"] == true);
    CHECK(summary["result"]["failed_count"] == 0);
    const std::size_t criteria = summary["result"]["criteria"].size();
    CHECK(criteria == lines.size() - 1); // one streamed line per criterion
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
        const Json line = Json::parse(lines[i]);
        CHECK(line["passed"] == true);
    }
}

TEST_CASE("oracle cross-checks the rootless-polynomial recurrence") {
    const CommandResult res = run_cli("oracle no-root -p 2 -m 4");
    REQUIRE(res.status == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["result"]["match"] == true);
    CHECK(j["result"]["enumeration"] == j["result"]["recurrence"]);
}

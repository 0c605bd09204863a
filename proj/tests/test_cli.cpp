#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac_pauli/cli.hpp"

using namespace dirac_pauli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        result.push_back(line);
    return result;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("dirac_pauli_test_" + name);
}

}  // namespace

TEST_CASE("spectrum example row") {
    const auto r = run({"spectrum", "--branch", "plus", "--a", "1", "--b", "1", "--mu", "-0.001", "--n", "0", "--ell",
                        "0", "--convention", "paper-literal"});
    CHECK(r.code == cli::exit_code::success);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "branch,n,ell,a,b,mu,convention,L,energy,classification");
    CHECK(rows[1] == "plus,0,0,1,1,-0.001,paper-literal,1.4149208458426217,0.00041392084584262166,particle");
}

TEST_CASE("spectrum ranges and JSON output") {
    const auto csv = run({"spectrum", "--n-max", "2", "--ell-max", "1"});
    CHECK(csv.code == 0);
    CHECK(lines(csv.out).size() == 7);

    const auto json = run({"spectrum", "--n-max", "1", "--format", "json"});
    REQUIRE(json.code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["command"] == "spectrum");
    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["classification"] == "antiparticle");
    CHECK(doc["rows"][1]["energy"].get<double>() == doctest::Approx(-0.0014145066324570253).epsilon(1e-13));
}

TEST_CASE("CSV header is present even without rows of interest") {
    for (const char* cmd : {"wavefunction", "figures", "sweep"}) {
        const auto r = run({cmd});
        CHECK(r.code == 0);
        CHECK(!lines(r.out).empty());
    }
    CHECK(lines(run({"wavefunction"}).out)[0] == "r,upper,partner,density");
    CHECK(lines(run({"figures"}).out)[0] == "figure,series,n,ell,a,b,mu,energy");
    CHECK(lines(run({"sweep"}).out)[0] ==
          "parameter,value,branch,n,ell,a,b,mu,convention,L,energy,classification");
}

TEST_CASE("wavefunction grid and density") {
    const auto r = run({"wavefunction", "--n", "1", "--ell", "1"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows.size() == 201);
    const auto custom = run({"wavefunction", "--min", "1", "--max", "10", "--steps", "5"});
    CHECK(lines(custom.out).size() == 6);
    CHECK(lines(custom.out)[1].rfind("1,", 0) == 0);
    CHECK(run({"wavefunction", "--min", "0", "--max", "10"}).code == cli::exit_code::invalid_manifest);
}

TEST_CASE("figures produce three series of 201 points") {
    for (const char* which : {"1", "2"}) {
        const auto r = run({"figures", "--which", which});
        REQUIRE(r.code == 0);
        CHECK(lines(r.out).size() == 1 + 3 * 201);
    }
    CHECK(run({"figures", "--which", "3"}).code == cli::exit_code::invalid_manifest);
}

TEST_CASE("verify passes for the oracle parameters") {
    const auto r = run({"verify", "--branch", "plus", "--mu", "0.001", "--a", "1", "--b", "1"});
    CHECK(r.code == cli::exit_code::success);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["passed"] == true);
    CHECK(doc["states"].size() == 9);
    CHECK(doc["spectrum_comparison"].size() == 9);
}

TEST_CASE("verify with the literal partner fails the relation checks") {
    const auto r = run({"verify", "--partner", "paper-literal", "--n-max", "0", "--ell-max", "0"});
    CHECK(r.code == cli::exit_code::verification_failure);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["passed"] == false);
    bool defining_failed = false;
    for (const auto& c : doc["checks"])
        if (c["name"].get<std::string>().rfind("defining_relation", 0) == 0)
            defining_failed = !c["passed"].get<bool>();
    CHECK(defining_failed);
}

TEST_CASE("construction errors exit 3 with JSON on stderr") {
    const auto r = run({"spectrum", "--branch", "minus", "--convention", "paper-literal", "--mu", "-0.001"});
    CHECK(r.code == cli::exit_code::construction_error);
    CHECK(r.out.empty());
    const auto err = nlohmann::json::parse(r.err);
    CHECK(err["error"] == "ComplexExponentError");
    CHECK(err["value"].get<double>() == doctest::Approx(-0.001999).epsilon(1e-9));

    const auto flat = run({"wavefunction", "--a", "0"});
    CHECK(flat.code == cli::exit_code::construction_error);
    CHECK(nlohmann::json::parse(flat.err)["error"] == "NonNormalizableError");
}

TEST_CASE("invalid manifests exit 2") {
    CHECK(run({}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"spectrum", "--bogus"}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"spectrum", "--branch", "sideways"}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"spectrum", "--n", "-1"}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"spectrum", "--n", "3", "--n-max", "1"}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"spectrum", "--ell-max", "65"}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"spectrum", "--a", "nan"}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"sweep", "--steps", "1"}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"sweep", "--min", "2", "--max", "1"}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"spectrum", "--format", "xml"}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"nonsense"}).code == cli::exit_code::invalid_manifest);
}

TEST_CASE("config file supplies defaults, flags override") {
    const auto path = temp_file("config.json");
    {
        std::ofstream f(path);
        f << R"({"branch": "plus", "mu": -0.001, "convention": "paper-literal", "n-max": 1})";
    }
    const auto from_file = run({"spectrum", "--config", path.string()});
    REQUIRE(from_file.code == 0);
    const auto rows = lines(from_file.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1] == "plus,0,0,1,1,-0.001,paper-literal,1.4149208458426217,0.00041392084584262166,particle");

    const auto overridden = run({"spectrum", "--config", path.string(), "--n-max", "0", "--mu", "0.001"});
    REQUIRE(overridden.code == 0);
    REQUIRE(lines(overridden.out).size() == 2);
    CHECK(lines(overridden.out)[1].find(",0.001,paper-literal,") != std::string::npos);

    {
        std::ofstream f(path);
        f << R"({"colour": "blue"})";
    }
    CHECK(run({"spectrum", "--config", path.string()}).code == cli::exit_code::invalid_manifest);
    {
        std::ofstream f(path);
        f << "{not json";
    }
    CHECK(run({"spectrum", "--config", path.string()}).code == cli::exit_code::invalid_manifest);
    CHECK(run({"spectrum", "--config", temp_file("missing.json").string()}).code == cli::exit_code::invalid_manifest);
    std::filesystem::remove(path);
}

TEST_CASE("--out writes the table to a file") {
    const auto path = temp_file("out.csv");
    const auto r = run({"spectrum", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == run({"spectrum"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("repeated runs are byte-identical") {
    const std::vector<std::string> args{"spectrum", "--n-max", "3", "--ell-max", "3", "--format", "json"};
    CHECK(run(args).out == run(args).out);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("rsg_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = rsg::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("constants document") {
    const fs::path dir = scratch("constants");
    const Result r = call({"constants", "--C", "2", "--format", "json", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(std::abs(j["p_C"].get<double>() - 0.3819660113) < 1e-10);
    CHECK(fs::exists(dir / "constants.json"));
    const Json m = Json::parse(slurp(dir / "constants.manifest.json"));
    CHECK(m["schema_version"] == 1);
    CHECK(m["subcommand"] == "constants");
    CHECK(m["seed_source"] == "entropy");
}

TEST_CASE("certify succeeds for five vertices and fails for six") {
    const fs::path dir = scratch("certify");
    const Result ok = call({"certify", "--C", "1", "--ell", "3", "--n", "5", "--k", "50", "--seed", "7", "--out",
                            dir.string()});
    REQUIRE(ok.code == 0);
    const Json j = Json::parse(ok.out);
    CHECK(j["points"].size() == 5);
    CHECK(j["seed"] == 7);
    CHECK(j["witness_checks"]["no_red_clique"] == true);
    CHECK(j["witness_checks"]["no_blue_clique"] == true);
    const Result no = call({"certify", "--C", "1", "--ell", "3", "--n", "6", "--k", "50", "--seed", "7", "--attempts",
                            "300", "--out", dir.string()});
    CHECK(no.code == 1);
    CHECK(Json::parse(no.out)["attempts"] == 300);
}

TEST_CASE("estimate output is byte-identical across runs") {
    const fs::path a = scratch("est_a"), b = scratch("est_b");
    const std::vector<std::string> base{"estimate", "--quantity", "red-clique", "--r", "3", "--k", "100", "--p", "auto",
                                        "--samples", "200000", "--seed", "1", "--workers", "3"};
    auto args = base;
    args.insert(args.end(), {"--out", a.string()});
    REQUIRE(call(args).code == 0);
    args = base;
    args.insert(args.end(), {"--out", b.string()});
    REQUIRE(call(args).code == 0);
    CHECK(slurp(a / "estimate.json") == slurp(b / "estimate.json"));
    const Json j = Json::parse(slurp(a / "estimate.json"));
    for (const char* key : {"quantity", "params", "estimate", "stderr", "prediction", "prediction_source", "z_score",
                            "seed", "workers"})
        CHECK(j.contains(key));
    CHECK(std::abs(j["z_score"].get<double>()) < 4.0);
}

TEST_CASE("usage errors exit with 2") {
    const fs::path dir = scratch("usage");
    Result r = call({"constants", "--C", "2", "--bogus", "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bogus") != std::string::npos);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"cap", "--k", "10", "--p", "0.7", "--out", dir.string()}).code == 2);
}

TEST_CASE("verify detects a biased cap solver") {
    const fs::path dir = scratch("verify");
    CHECK(call({"verify", "--only", "1", "2", "--seed", "3", "--out", dir.string()}).code == 0);
    const Result bad = call({"verify", "--only", "2", "--cap-bias", "1e-3", "--seed", "3", "--out", dir.string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("cap-closed-forms") != std::string::npos);
}

TEST_CASE("baseline csv columns") {
    const fs::path dir = scratch("baseline");
    const Result r = call({"baseline", "--C", "1", "2", "--ell", "20", "--format", "csv", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("C,ell,p_opt,log_n,beta_C,improvement_log_ratio\n", 0) == 0);
    CHECK(fs::exists(dir / "baseline.csv"));
    std::istringstream lines(r.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) ++n;
    CHECK(n == 3);
}

TEST_CASE("outputs stay inside the output directory") {
    const fs::path dir = scratch("contained");
    REQUIRE(call({"cap", "--k", "100", "--p", "0.3", "--a", "-0.01", "--seed", "1", "--out", dir.string()}).code == 0);
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"cap.json", "cap.manifest.json"});
}

TEST_CASE("graph subcommand reports clique numbers") {
    const fs::path dir = scratch("graph");
    const Result r = call({"graph", "--k", "5", "--n", "20", "--p", "0.4", "--seed", "2", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["n"] == 20);
    CHECK(j["red_edges"].get<long long>() + j["blue_edges"].get<long long>() == 190);
    CHECK(j["red_clique_number"].get<int>() >= 1);
}

TEST_CASE("constants union-bound block records ell0") {
    const fs::path dir = scratch("ell0");
    const Result r = call({"constants", "--C", "2", "--ell", "1000", "--ell0", "2000", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["union_bound"]["ell0"].get<double>() == 2000.0);
    CHECK_FALSE(j["union_bound"]["ell_at_least_ell0"].get<bool>());
    CHECK(call({"constants", "--C", "2", "--ell0", "5", "--out", dir.string()}).code == 2);
}

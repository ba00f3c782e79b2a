#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "batchcover/cli.hpp"
#include "batchcover/json_io.hpp"

using namespace batchcover;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("cli: gen rejects m < 2^z as a usage error") {
    const CliRun run = cli({"gen", "--family", "batched", "--m", "3", "--z", "2", "--out", "-"});
    CHECK(run.code == 2);
    CHECK(run.err.find("m >= 2^z") != std::string::npos);
    CHECK(run.err.find("unable to produce any batches") != std::string::npos);
}

TEST_CASE("cli: gen writes a loadable instance") {
    const auto path = temp_file("batchcover_cli_gen.json");
    const CliRun run =
        cli({"gen", "--family", "batched", "--m", "6", "--z", "1", "--out", path.string()});
    REQUIRE(run.code == 0);
    const Instance inst = load_instance(path);
    CHECK(inst.system.num_sets == 6);
    CHECK(inst.batches.size() == 5);
    std::filesystem::remove(path);
}

TEST_CASE("cli: gen to stdout, online family") {
    const CliRun run = cli({"gen", "--family", "online", "--m", "3", "--out", "-"});
    REQUIRE(run.code == 0);
    const Instance inst = instance_from_json_string(run.out);
    CHECK(inst.batches.size() == 3);
    CHECK(cli({"gen", "--family", "online", "--m", "3", "--z", "1", "--out", "-"}).code == 2);
}

TEST_CASE("cli: run happy path emits one json object") {
    const auto path = temp_file("batchcover_cli_run.json");
    REQUIRE(cli({"gen", "--family", "batched", "--m", "8", "--z", "2", "--out", path.string()})
                .code == 0);
    const CliRun run = cli({"run", "--instance", path.string(), "--algorithm", "dedicated",
                            "--epsilon", "0.001"});
    REQUIRE(run.code == 0);
    const auto j = nlohmann::json::parse(run.out);
    CHECK(j.at("algorithm") == "dedicated");
    CHECK(j.at("opt_cost") == 1.0);
    CHECK(j.at("ratio").get<double>() > 1.0);
    CHECK(j.at("per_batch_trace").size() == 5);
    CHECK(j.at("d") == 8);

    // identical argv, identical bytes
    const CliRun again = cli({"run", "--instance", path.string(), "--algorithm", "dedicated",
                              "--epsilon", "0.001"});
    CHECK(again.out == run.out);
    std::filesystem::remove(path);
}

TEST_CASE("cli: vcdim prints per-batch dimensions and a verdict") {
    const auto path = temp_file("batchcover_cli_vcdim.json");
    REQUIRE(cli({"gen", "--family", "batched", "--m", "5", "--z", "2", "--out", path.string()})
                .code == 0);
    const CliRun bare = cli({"vcdim", "--instance", path.string()});
    REQUIRE(bare.code == 0);
    CHECK(bare.out == "batch 1: vc=2\nbatch 2: vc=2\n");
    const CliRun verdict = cli({"vcdim", "--instance", path.string(), "--z", "2"});
    CHECK(verdict.out.find("z=2 restriction: satisfied") != std::string::npos);
    const CliRun bad = cli({"vcdim", "--instance", path.string(), "--z", "3"});
    CHECK(bad.code == 1);  // 5 < 2^3: restriction impossible
    std::filesystem::remove(path);
}

TEST_CASE("cli: experiment csv to stdout") {
    const CliRun run = cli({"experiment", "--z", "0", "--m-max", "5", "--algorithms", "trivial",
                            "--csv", "-"});
    REQUIRE(run.code == 0);
    std::istringstream lines(run.out);
    std::string line;
    int data_rows = 0;
    std::getline(lines, line);
    CHECK(line == "z,m,algorithm,epsilon,alg_cost,opt_cost,ratio,lower_bound");
    while (std::getline(lines, line)) {
        if (!line.empty()) ++data_rows;
    }
    CHECK(data_rows == 5);
}

TEST_CASE("cli: experiment writes csv and svg files") {
    const auto csv = temp_file("batchcover_cli_exp.csv");
    const auto svg = temp_file("batchcover_cli_exp.svg");
    const CliRun run = cli({"experiment", "--z", "0,2", "--m-max", "6", "--csv", csv.string(),
                            "--svg", svg.string(), "--no-adaptive"});
    REQUIRE(run.code == 0);
    CHECK(std::filesystem::exists(csv));
    std::ifstream svg_in(svg);
    std::string svg_text((std::istreambuf_iterator<char>(svg_in)),
                         std::istreambuf_iterator<char>());
    CHECK(svg_text.find("<svg") == 0);
    std::filesystem::remove(csv);
    std::filesystem::remove(svg);
}

TEST_CASE("cli: search reports the nested chain") {
    const CliRun run = cli({"search", "--m", "2", "--max-len", "2", "--algorithm", "trivial"});
    REQUIRE(run.code == 0);
    const auto j = nlohmann::json::parse(run.out);
    CHECK(j.at("best_ratio").get<double>() > 1.4);
    CHECK(j.at("best_sequence").size() == 2);
    CHECK(cli({"search", "--m", "5", "--max-len", "2"}).code == 2);
}

TEST_CASE("cli: epsilon precedence is flag, then environment, then config file") {
    const auto inst_path = temp_file("batchcover_cli_cfg_inst.json");
    const auto cfg_path = temp_file("batchcover_cli_cfg.toml");
    REQUIRE(cli({"gen", "--family", "online", "--m", "2", "--out", inst_path.string()}).code == 0);
    {
        std::ofstream cfg(cfg_path);
        cfg << "[run]\nepsilon = 0.009\n";
    }
    const std::vector<std::string> base = {"--config", cfg_path.string(), "run", "--instance",
                                           inst_path.string(), "--algorithm", "trivial"};

    const CliRun from_config = cli(base);
    REQUIRE(from_config.code == 0);
    CHECK(nlohmann::json::parse(from_config.out).at("epsilon") == 0.009);

    setenv("BATCHCOVER_EPSILON", "0.005", 1);
    const CliRun env_beats_config = cli(base);
    REQUIRE(env_beats_config.code == 0);
    CHECK(nlohmann::json::parse(env_beats_config.out).at("epsilon") == 0.005);

    std::vector<std::string> with_flag = base;
    with_flag.push_back("--epsilon");
    with_flag.push_back("0.002");
    const CliRun flag_beats_all = cli(with_flag);
    REQUIRE(flag_beats_all.code == 0);
    CHECK(nlohmann::json::parse(flag_beats_all.out).at("epsilon") == 0.002);

    unsetenv("BATCHCOVER_EPSILON");
    std::filesystem::remove(inst_path);
    std::filesystem::remove(cfg_path);
}

TEST_CASE("cli: epsilon environment override loses to the flag") {
    setenv("BATCHCOVER_EPSILON", "0.01", 1);
    const auto path = temp_file("batchcover_cli_env.json");
    REQUIRE(cli({"gen", "--family", "online", "--m", "2", "--out", path.string()}).code == 0);

    const CliRun from_env = cli({"run", "--instance", path.string(), "--algorithm", "trivial"});
    REQUIRE(from_env.code == 0);
    CHECK(nlohmann::json::parse(from_env.out).at("epsilon") == 0.01);

    const CliRun from_flag = cli({"run", "--instance", path.string(), "--algorithm", "trivial",
                                  "--epsilon", "0.002"});
    REQUIRE(from_flag.code == 0);
    CHECK(nlohmann::json::parse(from_flag.out).at("epsilon") == 0.002);

    setenv("BATCHCOVER_EPSILON", "bogus", 1);
    CHECK(cli({"run", "--instance", path.string(), "--algorithm", "trivial"}).code == 2);

    unsetenv("BATCHCOVER_EPSILON");
    std::filesystem::remove(path);
}

TEST_CASE("cli: flag errors and runtime errors use distinct exit codes") {
    CHECK(cli({"unknown"}).code == 2);
    CHECK(cli({"run", "--algorithm", "trivial"}).code == 2);   // missing --instance
    CHECK(cli({"run", "--instance", "/nonexistent.json", "--algorithm", "trivial"}).code == 1);
    CHECK(cli({"gen", "--family", "nope", "--m", "3", "--out", "-"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

#include "batchcover/cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "batchcover/core.hpp"
#include "batchcover/generators.hpp"
#include "batchcover/harness.hpp"
#include "batchcover/json_io.hpp"
#include "batchcover/solvers.hpp"
#include "batchcover/vc.hpp"

namespace batchcover {

namespace {

constexpr const char* kEpsilonEnvVar = "BATCHCOVER_EPSILON";

bool epsilon_flag_present(const std::vector<std::string>& args) {
    for (const std::string& a : args) {
        if (a == "--epsilon" || a.rfind("--epsilon=", 0) == 0) return true;
    }
    return false;
}

// Precedence for the step size: --epsilon beats BATCHCOVER_EPSILON beats the
// config file beats the built-in default. CLI11 applies config values before
// environment ones, so the environment override is applied here by hand.
void apply_epsilon_env(const std::vector<std::string>& args, double& epsilon) {
    if (epsilon_flag_present(args)) return;
    const char* raw = std::getenv(kEpsilonEnvVar);
    if (raw == nullptr || *raw == '\0') return;
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(value > 0.0)) {
        throw CLI::ValidationError(std::string(kEpsilonEnvVar) + ": expected a positive number, got '" +
                                   raw + "'");
    }
    epsilon = value;
}

DPolicy parse_d_policy(const std::string& text) {
    if (text == "m") return DPolicy::num_sets();
    if (text == "auto") return DPolicy::max_row_sparsity();
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size() && v >= 1) return DPolicy::fixed_value(v);
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("--d: expected auto, m, or a positive integer, got '" + text + "'");
}

Instance load_validated(const std::string& path) {
    Instance inst = load_instance(path);
    const auto violations = validate_instance(inst);
    if (!violations.empty()) {
        std::string msg = path + ": invalid instance:";
        for (const std::string& v : violations) msg += "\n  " + v;
        throw std::runtime_error(msg);
    }
    return inst;
}

nlohmann::ordered_json run_result_to_json(const RunResult& result) {
    nlohmann::ordered_json j;
    j["algorithm"] = std::string(algorithm_name(result.algorithm));
    j["primal_cost"] = result.primal_cost;
    j["dual_value"] = result.dual_value;
    j["opt_cost"] = result.opt_cost;
    j["ratio"] = result.ratio;
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const TracePoint& t : result.per_batch_trace) {
        trace.push_back(nlohmann::ordered_json::array({t.batch, t.primal_cost_after}));
    }
    j["per_batch_trace"] = std::move(trace);
    j["epsilon"] = result.epsilon;
    j["d"] = result.d;
    return j;
}

struct GenOptions {
    std::string family;
    int m = 0;
    int z = 0;
    std::string out_path;
};

struct VcdimOptions {
    std::string instance_path;
    std::optional<int> z;
};

struct RunCmdOptions {
    std::string instance_path;
    std::string algorithm;
    double epsilon = 1e-3;
    std::string d_text = "m";
    std::optional<std::uint64_t> seed;
};

struct ExperimentOptions {
    std::vector<int> z_values{0, 1, 2, 3, 4};
    int m_min = 1;
    int m_max = 30;
    double epsilon = 1e-3;
    std::vector<std::string> algorithms{"trivial", "dedicated"};
    bool adaptive = true;
    std::string csv_path;
    std::string svg_path;
    bool strict = false;
};

struct SearchOptions {
    int m = 3;
    int max_len = 3;
    std::string algorithm = "trivial";
    double epsilon = 1e-3;
};

int run_gen(const GenOptions& opt, std::ostream& out) {
    const Instance inst =
        opt.family == "online" ? gen_online_worst(opt.m) : gen_batched_worst(opt.m, opt.z);
    if (opt.out_path == "-") {
        out << instance_to_json_string(inst) << '\n';
    } else {
        save_instance(inst, opt.out_path);
    }
    return 0;
}

int run_vcdim(const VcdimOptions& opt, std::ostream& out) {
    const Instance inst = load_validated(opt.instance_path);
    for (std::size_t i = 0; i < inst.batches.size(); ++i) {
        out << "batch " << (i + 1) << ": vc=" << vc_dimension(inst.batches[i], inst.system)
            << '\n';
    }
    if (opt.z) {
        const bool ok = check_adversary_restriction(inst, *opt.z);
        out << "z=" << *opt.z << " restriction: " << (ok ? "satisfied" : "violated") << '\n';
    }
    return 0;
}

int run_run(const RunCmdOptions& opt, std::ostream& out) {
    const Instance inst = load_validated(opt.instance_path);
    RunOptions options;
    options.epsilon = opt.epsilon;
    options.d_policy = parse_d_policy(opt.d_text);
    options.shuffle_seed = opt.seed;
    const RunResult result = run_algorithm(algorithm_from_name(opt.algorithm), inst, options);
    out << run_result_to_json(result).dump() << '\n';
    return 0;
}

int run_experiment(const ExperimentOptions& opt, std::ostream& out, std::ostream& err) {
    ExperimentGrid grid;
    grid.z_values = opt.z_values;
    grid.m_min = opt.m_min;
    grid.m_max = opt.m_max;
    grid.epsilon = opt.epsilon;
    grid.algorithms.clear();
    for (const std::string& name : opt.algorithms) {
        grid.algorithms.push_back(algorithm_from_name(name));
    }
    grid.adaptive = opt.adaptive;

    const GridResult result = run_grid(grid);
    if (opt.csv_path == "-") {
        emit_csv(result, out);
    } else {
        emit_csv(result, std::filesystem::path(opt.csv_path));
    }
    if (!opt.svg_path.empty()) {
        if (opt.svg_path == "-") {
            emit_svg(result, out);
        } else {
            emit_svg(result, std::filesystem::path(opt.svg_path));
        }
    }
    if (!result.failed.empty() && opt.strict) {
        for (const FailedCell& f : result.failed) {
            err << "failed cell z=" << f.z << " m=" << f.m << " algorithm=" << f.algorithm << ": "
                << f.error << '\n';
        }
        return 1;
    }
    return 0;
}

int run_search(const SearchOptions& opt, std::ostream& out) {
    const SearchResult result =
        adversary_search(opt.m, algorithm_from_name(opt.algorithm), opt.epsilon, opt.max_len);
    nlohmann::ordered_json j;
    j["m"] = opt.m;
    j["max_len"] = opt.max_len;
    j["algorithm"] = opt.algorithm;
    j["epsilon"] = opt.epsilon;
    j["best_ratio"] = result.best_ratio;
    nlohmann::ordered_json seq = nlohmann::ordered_json::array();
    for (const auto& member_of : result.best_sequence) {
        std::vector<int> external(member_of.size());
        for (std::size_t i = 0; i < member_of.size(); ++i) external[i] = member_of[i] + 1;
        seq.push_back(external);
    }
    j["best_sequence"] = std::move(seq);
    out << j.dump() << '\n';
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fractional batched set cover: adversarial generators, primal-dual solvers, "
                 "experiment harness"};
    app.set_config("--config");
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a worst-case instance file");
    gen_cmd->add_option("--family", gen.family, "instance family")
        ->required()
        ->check(CLI::IsMember({"online", "batched"}));
    gen_cmd->add_option("--m", gen.m, "number of sets")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--z", gen.z, "VC-dimension floor (batched only)")
        ->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--out", gen.out_path, "output path, - for stdout")->required();

    VcdimOptions vcdim;
    CLI::App* vcdim_cmd =
        app.add_subcommand("vcdim", "per-batch VC-dimensions of an instance file");
    vcdim_cmd->add_option("--instance", vcdim.instance_path, "instance json path")->required();
    vcdim_cmd->add_option("--z", vcdim.z, "also report whether every batch has VC-dimension >= z");

    RunCmdOptions run;
    CLI::App* run_cmd = app.add_subcommand("run", "run one algorithm on an instance file");
    run_cmd->add_option("--instance", run.instance_path, "instance json path")->required();
    run_cmd->add_option("--algorithm", run.algorithm, "algorithm")
        ->required()
        ->check(CLI::IsMember({"trivial", "dedicated"}));
    run_cmd->add_option("--epsilon", run.epsilon, "dual step size")->check(CLI::PositiveNumber);
    run_cmd->add_option("--d", run.d_text, "sparsity parameter: auto, m, or a positive integer");
    run_cmd->add_option("--seed", run.seed, "shuffle each batch's processing order (trivial)");

    ExperimentOptions exp;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "competitive-ratio sweep over (z, m)");
    exp_cmd->add_option("--z", exp.z_values, "z values")->delimiter(',');
    exp_cmd->add_option("--m-min", exp.m_min, "smallest m")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--m-max", exp.m_max, "largest m")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--epsilon", exp.epsilon, "dual step size")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--algorithms", exp.algorithms, "algorithms to run")
        ->delimiter(',')
        ->check(CLI::IsMember({"trivial", "dedicated"}));
    exp_cmd->add_flag("--adaptive,!--no-adaptive", exp.adaptive,
                      "relabel sets against the live algorithm (default on)");
    exp_cmd->add_option("--csv", exp.csv_path, "CSV output path, - for stdout")->required();
    exp_cmd->add_option("--svg", exp.svg_path, "SVG output path, - for stdout");
    exp_cmd->add_flag("--strict", exp.strict, "exit nonzero if any cell failed");

    SearchOptions search;
    CLI::App* search_cmd =
        app.add_subcommand("search", "exhaustive worst-sequence search at tiny scale");
    search_cmd->add_option("--m", search.m, "number of sets (<= 4)")
        ->required()
        ->check(CLI::PositiveNumber);
    search_cmd->add_option("--max-len", search.max_len, "maximum sequence length (<= m)")
        ->required()
        ->check(CLI::PositiveNumber);
    search_cmd->add_option("--algorithm", search.algorithm, "algorithm")
        ->check(CLI::IsMember({"trivial", "dedicated"}));
    search_cmd->add_option("--epsilon", search.epsilon, "dual step size")
        ->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        apply_epsilon_env(args, run.epsilon);
        apply_epsilon_env(args, exp.epsilon);
        apply_epsilon_env(args, search.epsilon);

        if (gen_cmd->parsed()) {
            if (gen.family == "online" && gen.z != 0) {
                throw CLI::ValidationError("--z applies to the batched family only");
            }
            if (gen.family == "batched" && (gen.z >= 31 || gen.m < (1 << gen.z))) {
                throw CLI::ValidationError(
                    "gen requires m >= 2^z; with m=" + std::to_string(gen.m) + " and z=" +
                    std::to_string(gen.z) + " the adversary is unable to produce any batches");
            }
        }
        if (search_cmd->parsed()) {
            if (search.m > 4 || search.max_len > search.m) {
                throw CLI::ValidationError("search requires m <= 4 and max-len <= m");
            }
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen, out);
        if (vcdim_cmd->parsed()) return run_vcdim(vcdim, out);
        if (run_cmd->parsed()) return run_run(run, out);
        if (exp_cmd->parsed()) return run_experiment(exp, out, err);
        if (search_cmd->parsed()) return run_search(search, out);
        err << "error: no subcommand given\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace batchcover

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mnsim/errors.hpp"
#include "mnsim/experiment.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    int threads = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Config file (key/value with [sections])");
    cmd->add_option("--out-dir", opts.out_dir, "Output directory for CSV files");
    cmd->add_option("--seed", opts.seed, "Master RNG seed")->each([&](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--trials", opts.trials, "Monte-Carlo trial count");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)");
}

mnsim::ExperimentConfig resolve(const CommonOpts& opts, bool trials_are_inner) {
    mnsim::ExperimentConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = mnsim::load_config(opts.config_path);
    }
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.seed_set) cfg.seed = opts.seed;
    if (opts.trials > 0) {
        (trials_are_inner ? cfg.cdf_inner_trials : cfg.trials) = opts.trials;
    }
    if (opts.threads >= 0) cfg.threads = opts.threads;
    return cfg;
}

void print_files(const std::vector<std::string>& files) {
    for (const std::string& f : files) {
        std::cout << "wrote " << f << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-numerology CP-OFDM interference and scheduling simulator"};
    app.require_subcommand(1);

    CommonOpts case_opts;
    int case_id = 0;
    double boost_db = -1.0;
    CLI::App* case_cmd = app.add_subcommand("case", "Run one fixed-power case study (1..4)");
    case_cmd->add_option("--id", case_id, "Case id")->required()->check(CLI::Range(1, 4));
    case_cmd->add_option("--boost-db", boost_db, "Power boost applied by cases 2-4");
    add_common(case_cmd, case_opts);

    CommonOpts cdf_opts;
    std::string algorithms;
    int instances = 0;
    CLI::App* cdf_cmd = app.add_subcommand("cdf", "Run the scheduling-fairness CDF experiment");
    cdf_cmd->add_option("--algorithms", algorithms,
                        "Comma-separated subset of random,algo1,algo2");
    cdf_cmd->add_option("--instances", instances, "Outer instance count");
    add_common(cdf_cmd, cdf_opts);

    CommonOpts sir_opts;
    CLI::App* sir_cmd = app.add_subcommand("sir", "Estimate SIR for the configured allocation");
    add_common(sir_cmd, sir_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (case_cmd->parsed()) {
            mnsim::ExperimentConfig cfg = resolve(case_opts, false);
            if (boost_db >= 0.0) cfg.case_boost_db = boost_db;
            const auto result = mnsim::run_case(cfg, case_id);
            print_files(result.files);
            for (const auto& [id, sir] : result.report.per_ue_sir_db) {
                std::cout << id << " per-UE SIR " << sir << " dB\n";
            }
        } else if (cdf_cmd->parsed()) {
            mnsim::ExperimentConfig cfg = resolve(cdf_opts, true);
            cfg.power_mode = mnsim::PowerMode::UniformRandom;
            if (instances > 0) cfg.cdf_instances = instances;
            if (!algorithms.empty()) {
                cfg.algorithms.clear();
                std::size_t start = 0;
                while (start <= algorithms.size()) {
                    const std::size_t comma = algorithms.find(',', start);
                    const std::string name = algorithms.substr(
                        start, comma == std::string::npos ? std::string::npos : comma - start);
                    if (name == "random") cfg.algorithms.push_back(mnsim::SchedulerAlgorithm::Random);
                    else if (name == "algo1") cfg.algorithms.push_back(mnsim::SchedulerAlgorithm::EdgeFairness);
                    else if (name == "algo2") cfg.algorithms.push_back(mnsim::SchedulerAlgorithm::OverallFairness);
                    else throw mnsim::ConfigError("unknown algorithm '" + name + "'");
                    if (comma == std::string::npos) break;
                    start = comma + 1;
                }
            }
            const auto result = mnsim::run_cdf_experiment(cfg);
            print_files(result.files);
        } else if (sir_cmd->parsed()) {
            const auto result = mnsim::run_sir(resolve(sir_opts, false));
            print_files(result.files);
            for (const auto& [id, sir] : result.report.per_ue_sir_db) {
                std::cout << id << " per-UE SIR " << sir << " dB\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

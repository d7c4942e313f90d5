#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mnsim/errors.hpp"
#include "mnsim/experiment.hpp"

using namespace mnsim;

namespace {

ExperimentConfig from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "<test>");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("empty config keeps the reference defaults") {
    const ExperimentConfig cfg = from_text("");
    CHECK(cfg.d() == 3);
    CHECK(cfg.e() == 3);
    CHECK(cfg.delta_f_ref_khz == 15.0);
    CHECK(cfg.k == 1);
    CHECK(cfg.n_ref == 4096);
    CHECK(cfg.cp_ratio == doctest::Approx(1.0 / 16.0));
    CHECK(cfg.r == 2.0);
    CHECK(cfg.trials == 1000);
    CHECK(cfg.guard_bins == 0);
    CHECK(cfg.algorithms.size() == 3u);
}

TEST_CASE("config values parse, including p/q ratios and lists") {
    const ExperimentConfig cfg = from_text(
        "[numerology]\n"
        "cp_ratio = 1/8\n"
        "k = 0\n"
        "[ues]\n"
        "d = 2\n"
        "subcarriers2 = 64, 32, 16\n"
        "[power]\n"
        "mode = uniform\n"
        "uniform_hi_db = 12\n"
        "[mc]\n"
        "seed = 99\n"
        "[scheduler]\n"
        "algorithms = algo1, algo2\n"
        "pl_average = linear\n"
        "[cdf]\n"
        "instances = 7\n"
        "[output]\n"
        "figure_label = fig4\n");
    CHECK(cfg.cp_ratio == doctest::Approx(0.125));
    CHECK(cfg.k == 0);
    CHECK(cfg.subcarriers1 == std::vector<int>{120, 120});
    CHECK(cfg.subcarriers2 == std::vector<int>{64, 32, 16});
    CHECK(cfg.power_mode == PowerMode::UniformRandom);
    CHECK(cfg.uniform_hi_db == 12.0);
    CHECK(cfg.seed == 99u);
    CHECK(cfg.algorithms ==
          std::vector<SchedulerAlgorithm>{SchedulerAlgorithm::EdgeFairness,
                                          SchedulerAlgorithm::OverallFairness});
    CHECK(cfg.pl_average == PowerAverage::Linear);
    CHECK(cfg.cdf_instances == 7);
    CHECK(cfg.figure_label == "fig4");
}

TEST_CASE("config diagnostics name the key and location") {
    CHECK_THROWS_WITH_AS(from_text("[scheduler]\nr = 0.5\n"), doctest::Contains("r must be >= 1"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(from_text("[mc]\nbogus = 1\n"), doctest::Contains("bogus"), ConfigError);
    CHECK_THROWS_WITH_AS(from_text("[mc]\nbogus = 1\n"), doctest::Contains("<test>:2"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(from_text("[nope]\n"), doctest::Contains("unknown section"), ConfigError);
    CHECK_THROWS_AS(from_text("trials = 5\n"), ConfigError);
    CHECK_THROWS_AS(from_text("[mc]\ntrials = zero\n"), ConfigError);
    CHECK_THROWS_AS(from_text("[ues]\nd = 2\nsubcarriers1 = 1,2,3\n"), ConfigError);
    CHECK_THROWS_AS(from_text("[power]\nfixed1 = 0,0\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/no/such/file.ini"), ConfigError);
}

TEST_CASE("case runner validates its inputs") {
    ExperimentConfig cfg;
    cfg.trials = 2;
    cfg.out_dir.clear();
    CHECK_THROWS_AS(run_case(cfg, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_case(cfg, 5), std::invalid_argument);
    ExperimentConfig uniform = cfg;
    uniform.power_mode = PowerMode::UniformRandom;
    CHECK_THROWS_AS(run_case(uniform, 1), std::invalid_argument);
}

TEST_CASE("case powers follow the case definitions") {
    ExperimentConfig cfg;
    cfg.trials = 2;
    cfg.seed = 3;
    cfg.out_dir.clear();
    cfg.case_boost_db = 3.0;

    const auto case2 = run_case(cfg, 2);
    CHECK(case2.alloc.edge_ue2().power_db == 3.0);
    CHECK(case2.alloc.edge_ue1().power_db == 0.0);
    CHECK(case2.alloc.order2[1].power_db == 0.0);

    const auto case3 = run_case(cfg, 3);
    CHECK(case3.alloc.edge_ue2().power_db == 0.0);
    CHECK(case3.alloc.order2[1].power_db == 3.0);

    const auto case4 = run_case(cfg, 4);
    CHECK(case4.alloc.edge_ue1().power_db == 3.0);
    CHECK(case4.alloc.edge_ue2().power_db == 3.0);
    CHECK(case4.alloc.edge_ue1().power_db == case4.alloc.edge_ue2().power_db);

    // UE ids count outward from the boundary.
    CHECK(case2.alloc.edge_ue1().id == "n1_ue1");
    CHECK(case2.alloc.edge_ue2().id == "n2_ue1");
    CHECK(case2.alloc.order1.front().id == "n1_ue3");
}

TEST_CASE("case run writes deterministic CSVs with a preset header") {
    TempDir tmp("mnsim_case_csv");
    ExperimentConfig cfg;
    cfg.trials = 20;
    cfg.seed = 11;
    cfg.threads = 2;
    cfg.out_dir = (tmp.path / "a").string();
    const auto first = run_case(cfg, 1);
    REQUIRE(first.files.size() == 2u);
    const std::string per_bin = slurp(first.files[0]);
    CHECK(per_bin.find("# figure=fig3a") != std::string::npos);
    CHECK(per_bin.find("# preset=case1") != std::string::npos);
    CHECK(per_bin.find("numerology,absolute_bin,ue_id,sir_db") != std::string::npos);
    const std::string per_ue = slurp(first.files[1]);
    CHECK(per_ue.find("ue_id,per_ue_sir_db") != std::string::npos);
    CHECK(per_ue.find("n1_ue1,") != std::string::npos);

    cfg.out_dir = (tmp.path / "b").string();
    cfg.threads = 1;
    const auto second = run_case(cfg, 1);
    CHECK(slurp(second.files[0]) == per_bin);
    CHECK(slurp(second.files[1]) == per_ue);
}

TEST_CASE("cdf experiment rejects an empty algorithm set and fixed powers") {
    ExperimentConfig cfg;
    cfg.power_mode = PowerMode::UniformRandom;
    cfg.algorithms.clear();
    cfg.out_dir.clear();
    CHECK_THROWS_AS(run_cdf_experiment(cfg), std::invalid_argument);

    ExperimentConfig fixed;
    fixed.out_dir.clear();
    CHECK_THROWS_AS(run_cdf_experiment(fixed), std::invalid_argument);
}

TEST_CASE("cdf experiment is deterministic across worker counts") {
    ExperimentConfig cfg;
    cfg.power_mode = PowerMode::UniformRandom;
    cfg.cdf_instances = 12;
    cfg.cdf_inner_trials = 4;
    cfg.seed = 5;
    cfg.out_dir.clear();

    cfg.threads = 1;
    const auto a = run_cdf_experiment(cfg);
    cfg.threads = 2;
    const auto b = run_cdf_experiment(cfg);
    REQUIRE(a.buckets.size() == b.buckets.size());
    for (std::size_t i = 0; i < a.buckets.size(); ++i) {
        CHECK(a.buckets[i].sir_samples_db == b.buckets[i].sir_samples_db);
    }

    // Buckets exist per (algorithm, class, numerology) and curves are valid CDFs.
    const auto& bucket = a.bucket(SchedulerAlgorithm::EdgeFairness, true, 1);
    CHECK(bucket.sir_samples_db.size() == 12u);
    CHECK(bucket.curve.probs.back() == 1.0);
    const auto inner = a.bucket(SchedulerAlgorithm::Random, false, 2);
    CHECK(inner.sir_samples_db.size() == 24u);  // two inner UEs per instance
    CHECK(a.pooled_samples(SchedulerAlgorithm::Random, true).size() == 24u);
}

TEST_CASE("cdf CSV round-trips exactly") {
    TempDir tmp("mnsim_cdf_csv");
    ExperimentConfig cfg;
    cfg.power_mode = PowerMode::UniformRandom;
    cfg.cdf_instances = 6;
    cfg.cdf_inner_trials = 3;
    cfg.seed = 8;
    cfg.threads = 2;
    cfg.figure_label = "fig4";
    cfg.out_dir = (tmp.path / "out").string();
    const auto result = run_cdf_experiment(cfg);
    REQUIRE(result.files.size() == 1u);

    const auto rows = read_cdf_csv(result.files[0]);
    std::size_t expected_rows = 0;
    for (const auto& bucket : result.buckets) {
        expected_rows += bucket.curve.values_db.size();
    }
    REQUIRE(rows.size() == expected_rows);

    std::size_t idx = 0;
    for (const auto& bucket : result.buckets) {
        for (std::size_t i = 0; i < bucket.curve.values_db.size(); ++i, ++idx) {
            CHECK(rows[idx].algorithm == to_string(bucket.algorithm));
            CHECK(rows[idx].ue_class == (bucket.edge ? "edge" : "inner"));
            CHECK(rows[idx].numerology == bucket.numerology);
            CHECK(rows[idx].sir_db == bucket.curve.values_db[i]);
            CHECK(rows[idx].prob == bucket.curve.probs[i]);
        }
    }

    // Re-running with identical settings reproduces the file byte for byte.
    cfg.out_dir = (tmp.path / "out2").string();
    cfg.threads = 1;
    const auto again = run_cdf_experiment(cfg);
    CHECK(slurp(again.files[0]) == slurp(result.files[0]));
}

TEST_CASE("sir verb runs the configured fixed allocation") {
    ExperimentConfig cfg;
    cfg.trials = 5;
    cfg.subcarriers1 = {40, 40};
    cfg.subcarriers2 = {40};
    cfg.powers1 = {0.0, 2.0};
    cfg.powers2 = {1.0};
    cfg.out_dir.clear();
    const auto result = run_sir(cfg);
    CHECK(result.report.per_bin_sir_db_num1.size() == 80u);
    CHECK(result.report.per_bin_sir_db_num2.size() == 40u);
    CHECK(result.alloc.edge_ue1().power_db == 2.0);
}

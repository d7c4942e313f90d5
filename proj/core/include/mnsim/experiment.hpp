#ifndef MNSIM_EXPERIMENT_HPP
#define MNSIM_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mnsim/ini_analysis.hpp"
#include "mnsim/numerology.hpp"
#include "mnsim/scheduler.hpp"

namespace mnsim {

enum class PowerMode { Fixed, UniformRandom };

/// Experiment parameters. Field defaults mirror the reference simulation
/// setup (D=E=3, 15 kHz reference spacing, k=1, 4096-point reference
/// transform, CP ratio 1/16, threshold factor r=2).
struct ExperimentConfig {
    // numerology
    double delta_f_ref_khz = 15.0;
    int k = 1;  ///< scaling exponent of NUM-2; NUM-1 is the reference numerology
    int n_ref = 4096;
    double cp_ratio = 1.0 / 16.0;
    int guard_bins = 0;

    // UEs; counts are positional slot widths, low to high frequency
    // (subcarriers1 back() and subcarriers2 front() are the edge slots)
    std::vector<int> subcarriers1{120, 120, 120};
    std::vector<int> subcarriers2{120, 120, 120};

    // power assignment
    PowerMode power_mode = PowerMode::Fixed;
    std::vector<double> powers1{0.0, 0.0, 0.0};  ///< positional, dB
    std::vector<double> powers2{0.0, 0.0, 0.0};
    double uniform_lo_db = 0.0;
    double uniform_hi_db = 10.0;

    // Monte-Carlo
    int trials = 1000;
    std::uint64_t seed = 1;
    int threads = 0;  ///< 0 = hardware concurrency

    // scheduling
    std::vector<SchedulerAlgorithm> algorithms{SchedulerAlgorithm::Random,
                                               SchedulerAlgorithm::EdgeFairness,
                                               SchedulerAlgorithm::OverallFairness};
    double r = 2.0;
    PowerAverage pl_average = PowerAverage::Decibel;

    // CDF experiment
    int cdf_instances = 1000;
    int cdf_inner_trials = 50;

    // fixed-power case studies
    double case_boost_db = 3.0;

    // output
    std::string out_dir = "out";
    std::string figure_label;

    int d() const { return static_cast<int>(subcarriers1.size()); }
    int e() const { return static_cast<int>(subcarriers2.size()); }
};

/// Parses a key/value config file with [section] headers; omitted keys keep
/// their defaults. Throws ConfigError naming the key and location on unknown
/// keys, malformed values or out-of-range settings.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& name);

/// Allocation with identity ordering and the config's fixed powers.
/// UE ids count outward from the numerology boundary: n1_ue1/n2_ue1 are the
/// edge UEs, higher indices sit further inside the block.
SpectrumAllocation allocation_from_config(const ExperimentConfig& cfg);

struct CaseRunResult {
    SpectrumAllocation alloc;
    SirReport report;
    std::vector<std::string> files;  ///< CSV paths written (empty out_dir writes nothing)
};

/// Fixed-power case study: builds the case's power vector (1: all equal;
/// 2: NUM-2 edge boosted; 3: one NUM-2 inner boosted; 4: both edges boosted
/// equally), runs estimate_sir and writes per-bin + per-UE CSV.
CaseRunResult run_case(const ExperimentConfig& cfg, int case_id);

/// One-off SIR estimation of the configured allocation (the `sir` CLI verb).
CaseRunResult run_sir(const ExperimentConfig& cfg);

struct CdfBucket {
    SchedulerAlgorithm algorithm = SchedulerAlgorithm::Random;
    bool edge = false;
    int numerology = 1;
    std::vector<double> sir_samples_db;  ///< instance-major order
    CdfCurve curve;                      ///< empty when the bucket has no UEs
};

struct CdfExperimentResult {
    std::vector<CdfBucket> buckets;
    std::vector<std::string> files;

    const CdfBucket& bucket(SchedulerAlgorithm alg, bool edge, int numerology) const;
    /// Samples of both numerologies pooled, instance-major.
    std::vector<double> pooled_samples(SchedulerAlgorithm alg, bool edge) const;
};

/// Scheduling fairness study: draws per-UE powers uniformly per instance,
/// schedules with every configured algorithm, estimates per-UE SIR with the
/// inner trial count, and builds one CDF per (algorithm, UE class,
/// numerology). Instances run in parallel; outputs are instance-ordered, so
/// results are identical for any worker count.
CdfExperimentResult run_cdf_experiment(const ExperimentConfig& cfg);

/// One row of the CDF CSV schema (algorithm, ue_class, numerology, sir_db, prob).
struct CdfCsvRow {
    std::string algorithm;
    std::string ue_class;
    int numerology = 1;
    double sir_db = 0.0;
    double prob = 0.0;
};

void write_sir_csv(const SirReport& report, const SpectrumAllocation& alloc,
                   const std::string& per_bin_path, const std::string& per_ue_path,
                   const std::vector<std::pair<std::string, std::string>>& metadata);
void write_cdf_csv(const CdfExperimentResult& result, const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& metadata);
std::vector<CdfCsvRow> read_cdf_csv(const std::string& path);

}  // namespace mnsim

#endif  // MNSIM_EXPERIMENT_HPP

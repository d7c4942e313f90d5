#include "mnsim/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mnsim/errors.hpp"
#include "mnsim/rng.hpp"

namespace mnsim {

namespace {

// Seed derivations: trial substreams within one estimate_sir run are
// seed + trial, so instance streams are spaced far apart and the power /
// shuffle draws live in a disjoint region of the stream space.
constexpr std::uint64_t kInstanceSeedStride = 1u << 20;
constexpr std::uint64_t kPowerDrawSalt = 0x8000000000000000ull;
constexpr std::uint64_t kShuffleSalt = 0xc000000000000000ull;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_metadata(std::ofstream& out,
                    const std::vector<std::pair<std::string, std::string>>& metadata) {
    for (const auto& [key, value] : metadata) {
        out << "# " << key << "=" << value << "\n";
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    return out;
}

std::vector<UeProfile> positional_ues(int numerology, const std::vector<int>& counts,
                                      const std::vector<double>& powers, bool edge_last) {
    // Ids count outward from the numerology boundary: <num>_ue1 is the edge.
    const int n = static_cast<int>(counts.size());
    std::vector<UeProfile> ues(n);
    for (int pos = 0; pos < n; ++pos) {
        const int from_edge = edge_last ? (n - pos) : (pos + 1);
        ues[pos] = UeProfile{
            (numerology == 1 ? "n1_ue" : "n2_ue") + std::to_string(from_edge),
            numerology, powers[pos], counts[pos]};
    }
    return ues;
}

SpectrumAllocation build_from(const ExperimentConfig& cfg, const std::vector<double>& powers1,
                              const std::vector<double>& powers2) {
    const Numerology num1 = make_numerology(0, cfg.delta_f_ref_khz, cfg.n_ref, cfg.cp_ratio);
    const Numerology num2 = make_numerology(cfg.k, cfg.delta_f_ref_khz, cfg.n_ref, cfg.cp_ratio);
    return build_allocation(num1, num2,
                            positional_ues(1, cfg.subcarriers1, powers1, /*edge_last=*/true),
                            positional_ues(2, cfg.subcarriers2, powers2, /*edge_last=*/false),
                            cfg.guard_bins);
}

std::vector<std::pair<std::string, std::string>> common_metadata(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> md;
    if (!cfg.figure_label.empty()) {
        md.emplace_back("figure", cfg.figure_label);
    }
    md.emplace_back("delta_f_ref_khz", format_double(cfg.delta_f_ref_khz));
    md.emplace_back("k", std::to_string(cfg.k));
    md.emplace_back("n_ref", std::to_string(cfg.n_ref));
    md.emplace_back("cp_ratio", format_double(cfg.cp_ratio));
    md.emplace_back("guard_bins", std::to_string(cfg.guard_bins));
    md.emplace_back("seed", std::to_string(cfg.seed));
    return md;
}

CaseRunResult finish_fixed_run(const ExperimentConfig& cfg, const std::string& preset,
                               const SpectrumAllocation& alloc, SirReport report) {
    CaseRunResult result{alloc, std::move(report), {}};
    if (cfg.out_dir.empty()) {
        return result;
    }
    std::filesystem::create_directories(cfg.out_dir);
    const std::string per_bin = cfg.out_dir + "/" + preset + "_per_bin.csv";
    const std::string per_ue = cfg.out_dir + "/" + preset + "_per_ue.csv";
    auto md = common_metadata(cfg);
    md.emplace_back("preset", preset);
    md.emplace_back("trials", std::to_string(result.report.trials));
    write_sir_csv(result.report, result.alloc, per_bin, per_ue, md);
    result.files = {per_bin, per_ue};
    return result;
}

}  // namespace

SpectrumAllocation allocation_from_config(const ExperimentConfig& cfg) {
    return build_from(cfg, cfg.powers1, cfg.powers2);
}

CaseRunResult run_case(const ExperimentConfig& cfg, int case_id) {
    if (case_id < 1 || case_id > 4) {
        throw std::invalid_argument("run_case: case id must be in 1..4, got " +
                                    std::to_string(case_id));
    }
    if (cfg.power_mode != PowerMode::Fixed) {
        throw std::invalid_argument("run_case: config must use fixed power mode");
    }
    std::vector<double> p1(cfg.d(), 0.0);
    std::vector<double> p2(cfg.e(), 0.0);
    const double boost = cfg.case_boost_db;
    switch (case_id) {
        case 1:
            break;
        case 2:
            p2.front() += boost;  // NUM-2 edge UE
            break;
        case 3:
            if (cfg.e() < 2) {
                throw std::invalid_argument("run_case: case 3 needs an inner NUM-2 UE");
            }
            p2[1] += boost;  // NUM-2 inner UE adjacent to the edge
            break;
        case 4:
            p1.back() += boost;  // both edge UEs, no offset between them
            p2.front() += boost;
            break;
    }

    ExperimentConfig used = cfg;
    if (used.figure_label.empty()) {
        static const char* kFigures[] = {"fig3a", "fig3b", "fig3c", "fig3d"};
        used.figure_label = kFigures[case_id - 1];
    }
    const SpectrumAllocation alloc = build_from(used, p1, p2);
    SirReport report = estimate_sir(alloc, used.trials, used.seed, used.threads);
    return finish_fixed_run(used, "case" + std::to_string(case_id), alloc, std::move(report));
}

CaseRunResult run_sir(const ExperimentConfig& cfg) {
    if (cfg.power_mode != PowerMode::Fixed) {
        throw std::invalid_argument("run_sir: config must use fixed power mode");
    }
    const SpectrumAllocation alloc = allocation_from_config(cfg);
    SirReport report = estimate_sir(alloc, cfg.trials, cfg.seed, cfg.threads);
    return finish_fixed_run(cfg, "sir", alloc, std::move(report));
}

const CdfBucket& CdfExperimentResult::bucket(SchedulerAlgorithm alg, bool edge,
                                             int numerology) const {
    for (const CdfBucket& b : buckets) {
        if (b.algorithm == alg && b.edge == edge && b.numerology == numerology) {
            return b;
        }
    }
    throw std::out_of_range("CdfExperimentResult: no such bucket");
}

std::vector<double> CdfExperimentResult::pooled_samples(SchedulerAlgorithm alg, bool edge) const {
    std::vector<double> out;
    for (int numerology : {1, 2}) {
        const auto& samples = bucket(alg, edge, numerology).sir_samples_db;
        out.insert(out.end(), samples.begin(), samples.end());
    }
    return out;
}

CdfExperimentResult run_cdf_experiment(const ExperimentConfig& cfg) {
    if (cfg.algorithms.empty()) {
        throw std::invalid_argument("run_cdf_experiment: algorithm set must be non-empty");
    }
    if (cfg.power_mode != PowerMode::UniformRandom) {
        throw std::invalid_argument("run_cdf_experiment: config must use uniform power mode");
    }
    const int d = cfg.d();
    const int e = cfg.e();
    const int instances = cfg.cdf_instances;
    const int n_algs = static_cast<int>(cfg.algorithms.size());

    // Per (algorithm, instance) slots, filled in parallel, read in order.
    struct InstanceRow {
        double edge1, edge2;
        std::vector<double> inner1, inner2;
    };
    std::vector<std::vector<InstanceRow>> rows(n_algs);
    for (auto& r : rows) {
        r.resize(instances);
    }

    int workers = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min(workers, instances);

    auto run_instance = [&](int inst) {
        TrialRng power_rng(cfg.seed, kPowerDrawSalt + static_cast<std::uint64_t>(inst));
        std::vector<UeProfile> ues1(d);
        std::vector<UeProfile> ues2(e);
        for (int i = 0; i < d; ++i) {
            ues1[i] = UeProfile{"n1_ue" + std::to_string(i + 1), 1,
                                power_rng.uniform(cfg.uniform_lo_db, cfg.uniform_hi_db), 0};
        }
        for (int i = 0; i < e; ++i) {
            ues2[i] = UeProfile{"n2_ue" + std::to_string(i + 1), 2,
                                power_rng.uniform(cfg.uniform_lo_db, cfg.uniform_hi_db), 0};
        }
        const std::uint64_t inner_seed =
            cfg.seed + kInstanceSeedStride * (static_cast<std::uint64_t>(inst) + 1);
        for (int a = 0; a < n_algs; ++a) {
            ScheduleDecision decision;
            switch (cfg.algorithms[a]) {
                case SchedulerAlgorithm::Random:
                    decision = schedule_random(
                        ues1, ues2, cfg.seed + kShuffleSalt + static_cast<std::uint64_t>(inst));
                    break;
                case SchedulerAlgorithm::EdgeFairness:
                    decision = schedule_algo1(ues1, ues2);
                    break;
                case SchedulerAlgorithm::OverallFairness:
                    decision = schedule_algo2(ues1, ues2, cfg.r, cfg.pl_average);
                    break;
            }
            // Subcarrier counts are slot widths: bind them to the scheduled positions.
            for (int pos = 0; pos < d; ++pos) {
                decision.order1[pos].n_subcarriers = cfg.subcarriers1[pos];
            }
            for (int pos = 0; pos < e; ++pos) {
                decision.order2[pos].n_subcarriers = cfg.subcarriers2[pos];
            }
            const Numerology num1 =
                make_numerology(0, cfg.delta_f_ref_khz, cfg.n_ref, cfg.cp_ratio);
            const Numerology num2 =
                make_numerology(cfg.k, cfg.delta_f_ref_khz, cfg.n_ref, cfg.cp_ratio);
            const SpectrumAllocation alloc = build_allocation(
                num1, num2, decision.order1, decision.order2, cfg.guard_bins);
            const SirReport report =
                estimate_sir(alloc, cfg.cdf_inner_trials, inner_seed, /*threads=*/1);

            InstanceRow& row = rows[a][inst];
            const auto& sirs = report.per_ue_sir_db;  // order1 entries then order2 entries
            row.edge1 = sirs[d - 1].second;
            row.edge2 = sirs[d].second;
            row.inner1.reserve(d - 1);
            for (int i = 0; i < d - 1; ++i) {
                row.inner1.push_back(sirs[i].second);
            }
            row.inner2.reserve(e - 1);
            for (int i = d + 1; i < d + e; ++i) {
                row.inner2.push_back(sirs[i].second);
            }
        }
    };

    if (workers == 1) {
        for (int inst = 0; inst < instances; ++inst) {
            run_instance(inst);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int inst = w; inst < instances; inst += workers) {
                    run_instance(inst);
                }
            });
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }

    CdfExperimentResult result;
    for (int a = 0; a < n_algs; ++a) {
        for (const bool edge : {true, false}) {
            for (const int numerology : {1, 2}) {
                CdfBucket bucket;
                bucket.algorithm = cfg.algorithms[a];
                bucket.edge = edge;
                bucket.numerology = numerology;
                for (int inst = 0; inst < instances; ++inst) {
                    const InstanceRow& row = rows[a][inst];
                    if (edge) {
                        bucket.sir_samples_db.push_back(numerology == 1 ? row.edge1 : row.edge2);
                    } else {
                        const auto& inner = numerology == 1 ? row.inner1 : row.inner2;
                        bucket.sir_samples_db.insert(bucket.sir_samples_db.end(), inner.begin(),
                                                     inner.end());
                    }
                }
                if (!bucket.sir_samples_db.empty()) {
                    bucket.curve = empirical_cdf(bucket.sir_samples_db);
                }
                result.buckets.push_back(std::move(bucket));
            }
        }
    }

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        const std::string path = cfg.out_dir + "/cdf_curves.csv";
        auto md = common_metadata(cfg);
        md.emplace_back("preset", cfg.figure_label.empty() ? "cdf" : cfg.figure_label);
        md.emplace_back("instances", std::to_string(instances));
        md.emplace_back("inner_trials", std::to_string(cfg.cdf_inner_trials));
        md.emplace_back("r", format_double(cfg.r));
        write_cdf_csv(result, path, md);
        result.files = {path};
    }
    return result;
}

void write_sir_csv(const SirReport& report, const SpectrumAllocation& alloc,
                   const std::string& per_bin_path, const std::string& per_ue_path,
                   const std::vector<std::pair<std::string, std::string>>& metadata) {
    {
        std::ofstream out = open_out(per_bin_path);
        write_metadata(out, metadata);
        out << "numerology,absolute_bin,ue_id,sir_db\n";
        const int scale2 = alloc.num2.ref_bins_per_subcarrier();
        for (std::size_t u = 0; u < alloc.order1.size(); ++u) {
            const UeBinRange& range = alloc.ranges1[u];
            for (int j = 0; j < range.n_subcarriers; ++j) {
                const int subc = range.first_subcarrier + j;
                out << "1," << (alloc.base_ref_bin + subc) << ',' << alloc.order1[u].id << ','
                    << format_double(report.per_bin_sir_db_num1[subc]) << "\n";
            }
        }
        for (std::size_t u = 0; u < alloc.order2.size(); ++u) {
            const UeBinRange& range = alloc.ranges2[u];
            for (int j = 0; j < range.n_subcarriers; ++j) {
                const int subc = range.first_subcarrier + j;
                out << "2," << (alloc.num2_start_ref_bin + subc * scale2) << ','
                    << alloc.order2[u].id << ','
                    << format_double(report.per_bin_sir_db_num2[subc]) << "\n";
            }
        }
    }
    {
        std::ofstream out = open_out(per_ue_path);
        write_metadata(out, metadata);
        out << "ue_id,per_ue_sir_db\n";
        for (const auto& [id, sir] : report.per_ue_sir_db) {
            out << id << ',' << format_double(sir) << "\n";
        }
    }
}

void write_cdf_csv(const CdfExperimentResult& result, const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& metadata) {
    std::ofstream out = open_out(path);
    write_metadata(out, metadata);
    out << "algorithm,ue_class,numerology,sir_db,prob\n";
    for (const CdfBucket& bucket : result.buckets) {
        const std::string alg = to_string(bucket.algorithm);
        const char* cls = bucket.edge ? "edge" : "inner";
        for (std::size_t i = 0; i < bucket.curve.values_db.size(); ++i) {
            out << alg << ',' << cls << ',' << bucket.numerology << ','
                << format_double(bucket.curve.values_db[i]) << ','
                << format_double(bucket.curve.probs[i]) << "\n";
        }
    }
}

std::vector<CdfCsvRow> read_cdf_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open CDF CSV '" + path + "'");
    }
    std::vector<CdfCsvRow> rows;
    std::string line;
    bool header_seen = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // column header row
            continue;
        }
        std::istringstream ls(line);
        CdfCsvRow row;
        std::string field;
        std::getline(ls, row.algorithm, ',');
        std::getline(ls, row.ue_class, ',');
        std::getline(ls, field, ',');
        row.numerology = std::stoi(field);
        std::getline(ls, field, ',');
        row.sir_db = std::stod(field);
        std::getline(ls, field, ',');
        row.prob = std::stod(field);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mnsim

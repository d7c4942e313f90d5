#include "mnsim/ini_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mnsim/ofdm.hpp"
#include "mnsim/rng.hpp"
#include "ofdm_context.hpp"

namespace mnsim {

namespace {

double to_db(double linear) { return 10.0 * std::log10(linear); }

double sir_db(double desired, double interference) {
    return to_db(desired / std::max(interference, kInterferenceFloor));
}

/// Interference accumulators for one trial: victim bins of both numerologies.
void run_trial(detail::OfdmContext& ctx, std::uint64_t seed, int trial, double* ini1, double* ini2) {
    const SpectrumAllocation& alloc = ctx.alloc();
    TrialRng rng(seed, static_cast<std::uint64_t>(trial));
    const SymbolGrid g1 = draw_symbol_grid(alloc, 1, rng);
    const SymbolGrid g2 = draw_symbol_grid(alloc, 2, rng);

    BasebandSignal sig;
    DemodResult rx;

    // NUM-2 alone received by the NUM-1 demodulator.
    ctx.synthesize(g2, 2, sig);
    ctx.demodulate(sig, 1, rx);
    for (int i = 0; i < alloc.total_subcarriers1; ++i) {
        ini1[i] = std::norm(rx.bins[i]);
    }

    // NUM-1 alone received by the NUM-2 demodulator; average over its symbols.
    ctx.synthesize(g1, 1, sig);
    ctx.demodulate(sig, 2, rx);
    const double inv_sym = 1.0 / rx.n_symbols;
    for (int j = 0; j < alloc.total_subcarriers2; ++j) {
        double p = 0.0;
        for (int s = 0; s < rx.n_symbols; ++s) {
            p += std::norm(rx.at(s, j));
        }
        ini2[j] = p * inv_sym;
    }
}

}  // namespace

SirReport estimate_sir(const SpectrumAllocation& alloc, int trials, std::uint64_t seed,
                       int threads) {
    if (trials < 1) {
        throw std::invalid_argument("estimate_sir: trials must be >= 1");
    }
    if (threads < 0) {
        throw std::invalid_argument("estimate_sir: threads must be >= 0");
    }
    if (threads == 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
    }
    threads = std::min(threads, trials);

    const int n1 = alloc.total_subcarriers1;
    const int n2 = alloc.total_subcarriers2;
    const std::size_t stride = static_cast<std::size_t>(n1) + n2;

    // Per-trial slots keep the reduction order fixed regardless of worker count.
    std::vector<double> per_trial(stride * trials);
    auto worker = [&](int w) {
        detail::OfdmContext ctx(alloc);
        for (int t = w; t < trials; t += threads) {
            double* slot = per_trial.data() + stride * t;
            run_trial(ctx, seed, t, slot, slot + n1);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back(worker, w);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }

    SirReport report;
    report.trials = trials;
    report.seed = seed;
    report.mean_ini_power_num1.assign(n1, 0.0);
    report.mean_ini_power_num2.assign(n2, 0.0);
    for (int t = 0; t < trials; ++t) {
        const double* slot = per_trial.data() + stride * t;
        for (int i = 0; i < n1; ++i) {
            report.mean_ini_power_num1[i] += slot[i];
        }
        for (int j = 0; j < n2; ++j) {
            report.mean_ini_power_num2[j] += slot[n1 + j];
        }
    }
    const double inv_trials = 1.0 / trials;
    for (double& v : report.mean_ini_power_num1) v *= inv_trials;
    for (double& v : report.mean_ini_power_num2) v *= inv_trials;

    const SymbolGrid g1 = make_symbol_grid(alloc, 1);
    const SymbolGrid g2 = make_symbol_grid(alloc, 2);
    report.desired_power_num1.resize(n1);
    report.desired_power_num2.resize(n2);
    for (int i = 0; i < n1; ++i) {
        report.desired_power_num1[i] = g1.amplitude_scale[i] * g1.amplitude_scale[i];
    }
    for (int j = 0; j < n2; ++j) {
        report.desired_power_num2[j] = g2.amplitude_scale[j] * g2.amplitude_scale[j];
    }

    report.per_bin_sir_db_num1.resize(n1);
    report.per_bin_sir_db_num2.resize(n2);
    for (int i = 0; i < n1; ++i) {
        report.per_bin_sir_db_num1[i] =
            sir_db(report.desired_power_num1[i], report.mean_ini_power_num1[i]);
    }
    for (int j = 0; j < n2; ++j) {
        report.per_bin_sir_db_num2[j] =
            sir_db(report.desired_power_num2[j], report.mean_ini_power_num2[j]);
    }
    report.per_ue_sir_db = per_ue_sir(report, alloc);
    return report;
}

std::vector<std::pair<std::string, double>> per_ue_sir(const SirReport& report,
                                                       const SpectrumAllocation& alloc) {
    if (static_cast<int>(report.mean_ini_power_num1.size()) != alloc.total_subcarriers1 ||
        static_cast<int>(report.mean_ini_power_num2.size()) != alloc.total_subcarriers2) {
        throw std::invalid_argument("per_ue_sir: report does not match the allocation");
    }
    std::vector<std::pair<std::string, double>> out;
    out.reserve(alloc.order1.size() + alloc.order2.size());
    auto aggregate = [&](const std::vector<UeProfile>& order, const std::vector<UeBinRange>& ranges,
                         const std::vector<double>& desired, const std::vector<double>& ini) {
        for (std::size_t u = 0; u < order.size(); ++u) {
            double des = 0.0;
            double interf = 0.0;
            for (int j = 0; j < ranges[u].n_subcarriers; ++j) {
                des += desired[ranges[u].first_subcarrier + j];
                interf += ini[ranges[u].first_subcarrier + j];
            }
            out.emplace_back(order[u].id, to_db(des / std::max(interf, kInterferenceFloor)));
        }
    };
    aggregate(alloc.order1, alloc.ranges1, report.desired_power_num1, report.mean_ini_power_num1);
    aggregate(alloc.order2, alloc.ranges2, report.desired_power_num2, report.mean_ini_power_num2);
    return out;
}

double per_ue_sir(const SirReport& report, const SpectrumAllocation& alloc,
                  std::string_view ue_id) {
    for (const auto& [id, sir] : per_ue_sir(report, alloc)) {
        if (id == ue_id) {
            return sir;
        }
    }
    throw std::out_of_range("per_ue_sir: unknown UE id '" + std::string(ue_id) + "'");
}

CdfCurve empirical_cdf(std::vector<double> samples_db) {
    if (samples_db.empty()) {
        throw std::invalid_argument("empirical_cdf: samples must be non-empty");
    }
    std::sort(samples_db.begin(), samples_db.end());
    CdfCurve curve;
    const std::size_t n = samples_db.size();
    curve.values_db = std::move(samples_db);
    curve.probs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        curve.probs[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    }
    return curve;
}

}  // namespace mnsim

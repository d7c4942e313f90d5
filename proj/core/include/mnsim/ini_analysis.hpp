#ifndef MNSIM_INI_ANALYSIS_HPP
#define MNSIM_INI_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mnsim/numerology.hpp"

namespace mnsim {

/// Interference powers below this floor count as interference-free; with unit
/// desired power the reported SIR saturates at 300 dB.
inline constexpr double kInterferenceFloor = 1e-30;

/// Monte-Carlo INI/SIR estimates for one allocation.
///
/// Interference powers are linear-domain means over trials (and over the
/// numerology's symbols within the alignment window); SIR values are formed
/// after averaging.
struct SirReport {
    std::vector<double> per_bin_sir_db_num1;  ///< one entry per NUM-1 subcarrier
    std::vector<double> per_bin_sir_db_num2;  ///< one entry per NUM-2 subcarrier
    std::vector<double> mean_ini_power_num1;  ///< linear mean interference power
    std::vector<double> mean_ini_power_num2;
    std::vector<double> desired_power_num1;   ///< amplitude_scale^2 per bin
    std::vector<double> desired_power_num2;
    std::vector<std::pair<std::string, double>> per_ue_sir_db;
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Empirical CDF: sorted sample values with cumulative probabilities i/n.
struct CdfCurve {
    std::vector<double> values_db;
    std::vector<double> probs;
};

/// Estimates per-subcarrier INI and SIR over `trials` Monte-Carlo trials.
///
/// Each trial draws fresh QPSK data for both numerologies; the INI power on a
/// victim bin is the received power there while only the other numerology
/// transmits (the chain is linear and noise-free, so isolation and
/// subtraction agree). Trial substreams derive from seed + trial index, and
/// per-trial results reduce in trial order, so the report is bit-identical
/// for any worker count. threads = 0 picks the hardware concurrency.
SirReport estimate_sir(const SpectrumAllocation& alloc, int trials, std::uint64_t seed,
                       int threads = 1);

/// Per-UE SIR: total desired power over total mean INI power across the UE's
/// bins, in dB. Order matches order1 followed by order2.
std::vector<std::pair<std::string, double>> per_ue_sir(const SirReport& report,
                                                       const SpectrumAllocation& alloc);

/// Single-UE lookup; throws std::out_of_range for an unknown id.
double per_ue_sir(const SirReport& report, const SpectrumAllocation& alloc, std::string_view ue_id);

/// Standard empirical CDF; throws std::invalid_argument on empty input.
CdfCurve empirical_cdf(std::vector<double> samples_db);

}  // namespace mnsim

#endif  // MNSIM_INI_ANALYSIS_HPP

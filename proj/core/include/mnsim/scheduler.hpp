#ifndef MNSIM_SCHEDULER_HPP
#define MNSIM_SCHEDULER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mnsim/numerology.hpp"

namespace mnsim {

enum class SchedulerAlgorithm { Random, EdgeFairness, OverallFairness };

std::string to_string(SchedulerAlgorithm alg);

/// How Algorithm 2 averages the two power levels of a candidate pair.
/// The paper says only "averaged"; dB-domain averaging is the default.
enum class PowerAverage { Decibel, Linear };

/// One candidate edge pair: UE s of NUM-1 with UE t of NUM-2 (1-based).
struct PairSelection {
    int s = 0;
    int t = 0;
    double po_db = 0.0;  ///< PO(s,t) = |p1[s] - p2[t]|
};

/// Pairs whose power offset stays within th_p = r * min-PO, with the averaged
/// power level of each pair. The minimum-PO pair is always a member.
struct CandidateSet {
    double r = 1.0;
    double th_p_db = 0.0;
    std::vector<PairSelection> pairs;  ///< lexicographic (s, t) order
    std::vector<double> pl_db;         ///< averaged power level per pair
};

/// Boundary pair plus the resulting UE orderings.
///
/// order1's last element and order2's first element occupy the
/// boundary-facing positions; non-edge UEs keep their input relative order,
/// filling positions from the boundary outward.
struct ScheduleDecision {
    PairSelection edge_pair;
    std::vector<UeProfile> order1;
    std::vector<UeProfile> order2;
    SchedulerAlgorithm algorithm = SchedulerAlgorithm::Random;
};

/// PO(s,t) per Eq. (1): absolute dB difference of two power levels.
double power_offset(double p1_db, double p2_db);

/// Algorithm 1: minimizes the edge pair's power offset over all D x E pairs.
/// Ties break on smaller s, then smaller t.
ScheduleDecision schedule_algo1(const std::vector<UeProfile>& ues1,
                                const std::vector<UeProfile>& ues2);

/// Candidate pairs within the threshold th_p = r * min-PO (Eq. 3).
/// Throws std::invalid_argument when r < 1.
CandidateSet build_candidates(const std::vector<UeProfile>& ues1,
                              const std::vector<UeProfile>& ues2, double r,
                              PowerAverage avg = PowerAverage::Decibel);

/// Algorithm 2: lowest averaged power level within the candidate set (Eq. 4).
/// Ties break on smaller po_db, then smaller s, then smaller t.
ScheduleDecision schedule_algo2(const std::vector<UeProfile>& ues1,
                                const std::vector<UeProfile>& ues2, double r,
                                PowerAverage avg = PowerAverage::Decibel);

/// Baseline: independent uniform permutations of both UE lists.
ScheduleDecision schedule_random(const std::vector<UeProfile>& ues1,
                                 const std::vector<UeProfile>& ues2, std::uint64_t seed);

}  // namespace mnsim

#endif  // MNSIM_SCHEDULER_HPP

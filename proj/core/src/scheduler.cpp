#include "mnsim/scheduler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "mnsim/rng.hpp"

namespace mnsim {

namespace {

void require_non_empty(const std::vector<UeProfile>& ues1, const std::vector<UeProfile>& ues2) {
    if (ues1.empty() || ues2.empty()) {
        throw std::invalid_argument("scheduler: both UE lists must be non-empty");
    }
}

/// order1 variant: boundary at the back. Non-edge UEs take positions from the
/// boundary outward in input order.
std::vector<UeProfile> fill_order1(const std::vector<UeProfile>& ues, int edge_index) {
    std::vector<UeProfile> from_boundary;
    from_boundary.push_back(ues[edge_index]);
    for (int i = 0; i < static_cast<int>(ues.size()); ++i) {
        if (i != edge_index) {
            from_boundary.push_back(ues[i]);
        }
    }
    return {from_boundary.rbegin(), from_boundary.rend()};
}

/// order2 variant: boundary at the front.
std::vector<UeProfile> fill_order2(const std::vector<UeProfile>& ues, int edge_index) {
    std::vector<UeProfile> out;
    out.push_back(ues[edge_index]);
    for (int i = 0; i < static_cast<int>(ues.size()); ++i) {
        if (i != edge_index) {
            out.push_back(ues[i]);
        }
    }
    return out;
}

ScheduleDecision make_decision(const std::vector<UeProfile>& ues1,
                               const std::vector<UeProfile>& ues2, const PairSelection& pair,
                               SchedulerAlgorithm alg) {
    ScheduleDecision d;
    d.edge_pair = pair;
    d.order1 = fill_order1(ues1, pair.s - 1);
    d.order2 = fill_order2(ues2, pair.t - 1);
    d.algorithm = alg;
    return d;
}

double averaged_level(double p1_db, double p2_db, PowerAverage avg) {
    if (avg == PowerAverage::Decibel) {
        return (p1_db + p2_db) / 2.0;
    }
    const double mean_linear = (std::pow(10.0, p1_db / 10.0) + std::pow(10.0, p2_db / 10.0)) / 2.0;
    return 10.0 * std::log10(mean_linear);
}

}  // namespace

std::string to_string(SchedulerAlgorithm alg) {
    switch (alg) {
        case SchedulerAlgorithm::Random: return "random";
        case SchedulerAlgorithm::EdgeFairness: return "algo1";
        case SchedulerAlgorithm::OverallFairness: return "algo2";
    }
    return "unknown";
}

double power_offset(double p1_db, double p2_db) {
    if (!std::isfinite(p1_db) || !std::isfinite(p2_db)) {
        throw std::invalid_argument("power_offset: power levels must be finite");
    }
    return std::abs(p1_db - p2_db);
}

ScheduleDecision schedule_algo1(const std::vector<UeProfile>& ues1,
                                const std::vector<UeProfile>& ues2) {
    require_non_empty(ues1, ues2);
    PairSelection best{0, 0, std::numeric_limits<double>::infinity()};
    for (int s = 1; s <= static_cast<int>(ues1.size()); ++s) {
        for (int t = 1; t <= static_cast<int>(ues2.size()); ++t) {
            const double po = power_offset(ues1[s - 1].power_db, ues2[t - 1].power_db);
            if (po < best.po_db) {
                best = {s, t, po};
            }
        }
    }
    return make_decision(ues1, ues2, best, SchedulerAlgorithm::EdgeFairness);
}

CandidateSet build_candidates(const std::vector<UeProfile>& ues1,
                              const std::vector<UeProfile>& ues2, double r, PowerAverage avg) {
    require_non_empty(ues1, ues2);
    if (!(r >= 1.0)) {
        throw std::invalid_argument("build_candidates: r must be >= 1");
    }
    double min_po = std::numeric_limits<double>::infinity();
    for (const UeProfile& u1 : ues1) {
        for (const UeProfile& u2 : ues2) {
            min_po = std::min(min_po, power_offset(u1.power_db, u2.power_db));
        }
    }
    CandidateSet set;
    set.r = r;
    set.th_p_db = r * min_po;
    for (int s = 1; s <= static_cast<int>(ues1.size()); ++s) {
        for (int t = 1; t <= static_cast<int>(ues2.size()); ++t) {
            const double po = power_offset(ues1[s - 1].power_db, ues2[t - 1].power_db);
            if (po <= set.th_p_db) {
                set.pairs.push_back({s, t, po});
                set.pl_db.push_back(
                    averaged_level(ues1[s - 1].power_db, ues2[t - 1].power_db, avg));
            }
        }
    }
    return set;
}

ScheduleDecision schedule_algo2(const std::vector<UeProfile>& ues1,
                                const std::vector<UeProfile>& ues2, double r, PowerAverage avg) {
    const CandidateSet set = build_candidates(ues1, ues2, r, avg);
    std::size_t best = 0;
    for (std::size_t i = 1; i < set.pairs.size(); ++i) {
        const auto key = [&](std::size_t j) {
            return std::make_tuple(set.pl_db[j], set.pairs[j].po_db, set.pairs[j].s,
                                   set.pairs[j].t);
        };
        if (key(i) < key(best)) {
            best = i;
        }
    }
    return make_decision(ues1, ues2, set.pairs[best], SchedulerAlgorithm::OverallFairness);
}

ScheduleDecision schedule_random(const std::vector<UeProfile>& ues1,
                                 const std::vector<UeProfile>& ues2, std::uint64_t seed) {
    require_non_empty(ues1, ues2);
    TrialRng rng(seed, 0);
    ScheduleDecision d;
    d.algorithm = SchedulerAlgorithm::Random;
    d.order1 = ues1;
    d.order2 = ues2;
    rng.shuffle(d.order1);
    rng.shuffle(d.order2);
    const UeProfile& e1 = d.order1.back();
    const UeProfile& e2 = d.order2.front();
    // Recover input indices for the edge pair bookkeeping.
    auto index_of = [](const std::vector<UeProfile>& ues, const std::string& id) {
        for (std::size_t i = 0; i < ues.size(); ++i) {
            if (ues[i].id == id) {
                return static_cast<int>(i) + 1;
            }
        }
        return 0;
    };
    d.edge_pair = {index_of(ues1, e1.id), index_of(ues2, e2.id),
                   power_offset(e1.power_db, e2.power_db)};
    return d;
}

}  // namespace mnsim

#include "mnsim/numerology.hpp"

#include <cmath>
#include <stdexcept>

#include "mnsim/errors.hpp"

namespace mnsim {

namespace {

constexpr double kSlotDurationRefMs = 1.0;  // 15 kHz reference slot
constexpr double kExtendedCpRatio = 0.25;   // 60 kHz extended CP option

bool nearly_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

}  // namespace

Numerology make_numerology(int k, double delta_f_ref_khz, int n_ref, double cp_ratio) {
    if (k < 0) {
        throw ConfigError("k must be >= 0, got " + std::to_string(k));
    }
    if (delta_f_ref_khz <= 0.0) {
        throw ConfigError("delta_f_ref_khz must be positive");
    }
    if (n_ref <= 0) {
        throw ConfigError("n_ref must be positive");
    }
    const int scale = 1 << k;
    if (n_ref % scale != 0) {
        throw ConfigError("n_fft = n_ref / 2^k is not an integer: " + std::to_string(n_ref) +
                          " / " + std::to_string(scale));
    }
    if (!(cp_ratio > 0.0 && cp_ratio < 1.0)) {
        throw ConfigError("cp_ratio must lie in (0, 1), got " + std::to_string(cp_ratio));
    }

    Numerology n;
    n.k = k;
    n.delta_f_ref_khz = delta_f_ref_khz;
    n.n_ref = n_ref;
    n.cp_ratio = cp_ratio;
    n.delta_f_khz = delta_f_ref_khz * scale;
    n.n_fft = n_ref / scale;

    const double cp_samples = cp_ratio * n.n_fft;
    if (!nearly_integer(cp_samples)) {
        throw ConfigError("cp_ratio * n_fft is not an integer sample count: " +
                          std::to_string(cp_ratio) + " * " + std::to_string(n.n_fft) + " = " +
                          std::to_string(cp_samples));
    }
    n.n_cp = static_cast<int>(std::llround(cp_samples));

    const double useful_symbol_us = 1e3 / n.delta_f_khz;  // 1/delta_f
    n.t_cp_us = cp_ratio * useful_symbol_us;
    n.slot_duration_ms = kSlotDurationRefMs / scale;
    n.symbols_per_slot = (std::abs(cp_ratio - kExtendedCpRatio) < 1e-12) ? 12 : 14;
    return n;
}

SpectrumAllocation build_allocation(const Numerology& num1, const Numerology& num2,
                                    std::vector<UeProfile> order1, std::vector<UeProfile> order2,
                                    int guard_subcarriers) {
    if (order1.empty() && order2.empty()) {
        throw std::invalid_argument("build_allocation: at least one UE list must be non-empty");
    }
    if (guard_subcarriers < 0) {
        throw std::invalid_argument("build_allocation: guard_subcarriers must be >= 0");
    }
    if (num1.k != 0) {
        throw std::invalid_argument("build_allocation: num1 must be the reference numerology (k = 0)");
    }
    if (num1.delta_f_ref_khz != num2.delta_f_ref_khz || num1.n_ref != num2.n_ref ||
        num1.cp_ratio != num2.cp_ratio) {
        throw std::invalid_argument(
            "build_allocation: numerologies must share delta_f_ref, n_ref and cp_ratio");
    }

    auto check_ues = [](const std::vector<UeProfile>& ues, int index) {
        for (const UeProfile& ue : ues) {
            if (ue.n_subcarriers < 1) {
                throw std::invalid_argument("UE " + ue.id + ": n_subcarriers must be >= 1");
            }
            if (!std::isfinite(ue.power_db)) {
                throw std::invalid_argument("UE " + ue.id + ": power_db must be finite");
            }
            if (ue.numerology_index != index) {
                throw std::invalid_argument("UE " + ue.id + ": numerology_index does not match block");
            }
        }
    };
    check_ues(order1, 1);
    check_ues(order2, 2);

    SpectrumAllocation alloc;
    alloc.num1 = num1;
    alloc.num2 = num2;
    alloc.order1 = std::move(order1);
    alloc.order2 = std::move(order2);
    alloc.guard_subcarriers = guard_subcarriers;

    const int scale2 = num2.ref_bins_per_subcarrier();
    int subc = 0;
    for (const UeProfile& ue : alloc.order1) {
        alloc.ranges1.push_back({subc, ue.n_subcarriers, alloc.base_ref_bin + subc, ue.n_subcarriers});
        subc += ue.n_subcarriers;
    }
    alloc.total_subcarriers1 = subc;

    alloc.num2_start_ref_bin = alloc.base_ref_bin + alloc.total_subcarriers1 + guard_subcarriers;
    subc = 0;
    for (const UeProfile& ue : alloc.order2) {
        alloc.ranges2.push_back({subc, ue.n_subcarriers,
                                 alloc.num2_start_ref_bin + subc * scale2,
                                 ue.n_subcarriers * scale2});
        subc += ue.n_subcarriers;
    }
    alloc.total_subcarriers2 = subc;

    const int required = alloc.total_subcarriers1 + guard_subcarriers +
                         alloc.total_subcarriers2 * scale2;
    if (required > num1.n_ref) {
        throw AllocationError("allocation exceeds the reference grid: requires " +
                              std::to_string(required) + " bins, " + std::to_string(num1.n_ref) +
                              " available");
    }
    return alloc;
}

}  // namespace mnsim

#ifndef MNSIM_NUMEROLOGY_HPP
#define MNSIM_NUMEROLOGY_HPP

#include <string>
#include <vector>

namespace mnsim {

/// One OFDM numerology: subcarrier spacing, transform size and CP/slot timing.
///
/// Spacings scale as delta_f = 2^k * delta_f_ref while the transform shrinks
/// as n_fft = n_ref / 2^k, so every numerology produces samples at the common
/// rate n_ref * delta_f_ref.
struct Numerology {
    double delta_f_khz = 0.0;      ///< subcarrier spacing
    int k = 0;                     ///< scaling exponent relative to delta_f_ref
    int n_fft = 0;                 ///< transform size in samples
    double cp_ratio = 0.0;         ///< CP length as a fraction of the useful symbol
    int n_cp = 0;                  ///< CP length in samples (cp_ratio * n_fft, exact)
    double t_cp_us = 0.0;          ///< CP duration
    double slot_duration_ms = 0.0;
    int symbols_per_slot = 0;

    double delta_f_ref_khz = 0.0;  ///< reference spacing this numerology scales from
    int n_ref = 0;                 ///< reference transform size

    /// Samples per CP-prefixed OFDM symbol at the common rate.
    int symbol_samples() const { return n_fft + n_cp; }
    /// 2^k: reference-grid bins spanned by one subcarrier.
    int ref_bins_per_subcarrier() const { return n_ref / n_fft; }
};

/// Builds a numerology from the reference grid parameters.
///
/// Throws ConfigError when n_ref is not divisible by 2^k or when
/// cp_ratio * n_fft is not an integer sample count.
Numerology make_numerology(int k, double delta_f_ref_khz, int n_ref, double cp_ratio);

/// One user's share of a numerology block.
struct UeProfile {
    std::string id;
    int numerology_index = 1;  ///< 1 or 2
    double power_db = 0.0;     ///< relative to the 0 dB reference
    int n_subcarriers = 0;
};

/// Absolute placement of one UE on the reference grid.
struct UeBinRange {
    int first_subcarrier = 0;  ///< index in the owning numerology's grid
    int n_subcarriers = 0;
    int first_ref_bin = 0;     ///< absolute reference-grid bin
    int ref_bin_count = 0;     ///< n_subcarriers * 2^k
};

/// Two contiguous numerology blocks sharing the reference grid.
///
/// NUM-1 occupies the lower band and NUM-2 the upper band. order1's last
/// element and order2's first element are the edge UEs facing the boundary.
struct SpectrumAllocation {
    Numerology num1;
    Numerology num2;
    std::vector<UeProfile> order1;  ///< low to high frequency; back() is the edge UE
    std::vector<UeProfile> order2;  ///< low to high frequency; front() is the edge UE
    int guard_subcarriers = 0;      ///< reference-grid bins left empty between blocks

    int total_subcarriers1 = 0;
    int total_subcarriers2 = 0;
    int base_ref_bin = 0;           ///< first NUM-1 bin
    int num2_start_ref_bin = 0;     ///< absolute bin of NUM-2's first subcarrier
    std::vector<UeBinRange> ranges1;
    std::vector<UeBinRange> ranges2;

    const UeProfile& edge_ue1() const { return order1.back(); }
    const UeProfile& edge_ue2() const { return order2.front(); }
    /// Samples in one alignment window (one NUM-1 CP-prefixed symbol).
    int window_samples() const { return num1.symbol_samples(); }
    /// NUM-2 symbols per alignment window.
    int num2_symbols_per_window() const { return num1.symbol_samples() / num2.symbol_samples(); }
};

/// Assigns contiguous, non-overlapping bin ranges to every UE of both blocks.
///
/// num1 must be the reference numerology (k = 0); both numerologies must share
/// delta_f_ref, n_ref and cp_ratio so that one NUM-1 symbol spans an integer
/// number of NUM-2 symbols. One order may be empty, which leaves that block
/// silent (the single-numerology case). Throws AllocationError when the
/// aggregate demand exceeds the reference grid, std::invalid_argument on
/// malformed UE lists.
SpectrumAllocation build_allocation(const Numerology& num1, const Numerology& num2,
                                    std::vector<UeProfile> order1, std::vector<UeProfile> order2,
                                    int guard_subcarriers);

}  // namespace mnsim

#endif  // MNSIM_NUMEROLOGY_HPP

#ifndef MNSIM_OFDM_HPP
#define MNSIM_OFDM_HPP

#include <complex>
#include <vector>

#include "mnsim/numerology.hpp"
#include "mnsim/rng.hpp"

namespace mnsim {

using cplx = std::complex<double>;

/// QAM payload for one numerology over one alignment window.
///
/// qam_symbols holds unit-average-energy symbols, one row per OFDM symbol;
/// amplitude_scale carries each subcarrier's linear amplitude
/// sqrt(10^(power_db/10)) from the owning UE.
struct SymbolGrid {
    int numerology_index = 1;
    int n_subcarriers = 0;
    int n_symbols = 0;
    std::vector<cplx> qam_symbols;        ///< [symbol * n_subcarriers + subcarrier]
    std::vector<double> amplitude_scale;  ///< per subcarrier

    cplx& at(int symbol, int subcarrier) { return qam_symbols[symbol * n_subcarriers + subcarrier]; }
    const cplx& at(int symbol, int subcarrier) const {
        return qam_symbols[symbol * n_subcarriers + subcarrier];
    }
};

/// Complex baseband time series over one alignment window at the common rate.
struct BasebandSignal {
    std::vector<cplx> samples;
    double sample_rate_hz = 0.0;  ///< n_ref * delta_f_ref
};

/// Demodulated bins for one numerology: n_symbols x n_subcarriers complex values.
struct DemodResult {
    int n_subcarriers = 0;
    int n_symbols = 0;
    std::vector<cplx> bins;  ///< [symbol * n_subcarriers + subcarrier]

    const cplx& at(int symbol, int subcarrier) const {
        return bins[symbol * n_subcarriers + subcarrier];
    }
};

/// Grid with all-zero symbols and amplitudes populated from the UE powers.
SymbolGrid make_symbol_grid(const SpectrumAllocation& alloc, int which);

/// Grid with fresh independent QPSK data on every cell.
SymbolGrid draw_symbol_grid(const SpectrumAllocation& alloc, int which, TrialRng& rng);

/// CP-OFDM synthesis of one numerology block onto the common sampling grid.
///
/// NUM-1 is generated with the n_ref-point inverse transform at its absolute
/// bins. NUM-2 is generated at its native n_fft, CP-prefixed per symbol, then
/// frequency-shifted by a per-sample complex exponential over the whole window
/// so its first subcarrier lands guard+1 reference bins above the NUM-1 block.
BasebandSignal synthesize(const SpectrumAllocation& alloc, const SymbolGrid& grid, int which);

/// Element-wise sum; throws DimensionError on length or rate mismatch.
BasebandSignal compose(const BasebandSignal& a, const BasebandSignal& b);

/// Per-symbol CP drop + forward transform with the numerology's own receiver.
/// NUM-2 demodulation applies the inverse frequency shift first.
DemodResult demodulate(const BasebandSignal& sig, const SpectrumAllocation& alloc, int which);

}  // namespace mnsim

#endif  // MNSIM_OFDM_HPP

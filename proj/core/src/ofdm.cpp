#include "mnsim/ofdm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mnsim/errors.hpp"
#include "ofdm_context.hpp"

namespace mnsim {

namespace detail {

void check_which(int which) {
    if (which != 1 && which != 2) {
        throw std::invalid_argument("numerology index must be 1 or 2, got " + std::to_string(which));
    }
}

OfdmContext::OfdmContext(const SpectrumAllocation& alloc)
    : alloc_(alloc),
      fft1_(alloc.num1.n_fft),
      fft2_(alloc.num2.n_fft),
      spec_(alloc.num1.n_fft),
      time_(alloc.num1.n_fft),
      work_(alloc.window_samples()) {
    const int win = alloc_.window_samples();
    const int n_ref = alloc_.num1.n_ref;
    const std::int64_t b0 = alloc_.num2_start_ref_bin;
    shift_.resize(win);
    for (int n = 0; n < win; ++n) {
        // Exact phase via integer modulus: b0*n can exceed 2^31.
        const std::int64_t r = (b0 * n) % n_ref;
        shift_[n] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                                        static_cast<double>(n_ref));
    }
}

void OfdmContext::synthesize(const SymbolGrid& grid, int which, BasebandSignal& out) {
    check_which(which);
    const int win = alloc_.window_samples();
    out.samples.assign(win, cplx{});
    out.sample_rate_hz = alloc_.num1.n_ref * alloc_.num1.delta_f_ref_khz * 1e3;

    if (which == 1) {
        const Numerology& nu = alloc_.num1;
        if (grid.n_subcarriers != alloc_.total_subcarriers1 || grid.n_symbols != 1) {
            throw DimensionError("synthesize: NUM-1 grid does not match the allocation");
        }
        std::fill(spec_.begin(), spec_.end(), cplx{});
        for (int i = 0; i < grid.n_subcarriers; ++i) {
            spec_[alloc_.base_ref_bin + i] = grid.at(0, i) * grid.amplitude_scale[i];
        }
        fft1_.inverse(spec_, std::span<cplx>(time_.data(), nu.n_fft));
        // CP = tail copy; the body follows.
        for (int n = 0; n < nu.n_cp; ++n) {
            out.samples[n] = time_[nu.n_fft - nu.n_cp + n];
        }
        std::copy(time_.begin(), time_.begin() + nu.n_fft, out.samples.begin() + nu.n_cp);
        return;
    }

    const Numerology& nu = alloc_.num2;
    const int nsym = alloc_.num2_symbols_per_window();
    if (grid.n_subcarriers != alloc_.total_subcarriers2 || grid.n_symbols != nsym) {
        throw DimensionError("synthesize: NUM-2 grid does not match the allocation");
    }
    const int per = nu.symbol_samples();
    std::span<cplx> spec2(spec_.data(), nu.n_fft);
    std::span<cplx> time2(time_.data(), nu.n_fft);
    for (int s = 0; s < nsym; ++s) {
        std::fill(spec2.begin(), spec2.end(), cplx{});
        for (int j = 0; j < grid.n_subcarriers; ++j) {
            spec2[j] = grid.at(s, j) * grid.amplitude_scale[j];
        }
        fft2_.inverse(spec2, time2);
        cplx* seg = out.samples.data() + s * per;
        for (int n = 0; n < nu.n_cp; ++n) {
            seg[n] = time2[nu.n_fft - nu.n_cp + n];
        }
        std::copy(time2.begin(), time2.end(), seg + nu.n_cp);
    }
    // Per-sample shift over the whole window keeps the CP discontinuities
    // between NUM-2 symbols intact; these drive the INI.
    for (int n = 0; n < win; ++n) {
        out.samples[n] *= shift_[n];
    }
}

void OfdmContext::demodulate(const BasebandSignal& sig, int which, DemodResult& out) {
    check_which(which);
    const int win = alloc_.window_samples();
    if (static_cast<int>(sig.samples.size()) != win) {
        throw DimensionError("demodulate: signal length " + std::to_string(sig.samples.size()) +
                             " != alignment window " + std::to_string(win));
    }

    if (which == 1) {
        const Numerology& nu = alloc_.num1;
        out.n_subcarriers = alloc_.total_subcarriers1;
        out.n_symbols = 1;
        out.bins.resize(out.n_subcarriers);
        fft1_.forward(std::span<const cplx>(sig.samples.data() + nu.n_cp, nu.n_fft),
                      std::span<cplx>(time_.data(), nu.n_fft));
        const double inv_n = 1.0 / nu.n_fft;
        for (int i = 0; i < out.n_subcarriers; ++i) {
            out.bins[i] = time_[alloc_.base_ref_bin + i] * inv_n;
        }
        return;
    }

    const Numerology& nu = alloc_.num2;
    const int nsym = alloc_.num2_symbols_per_window();
    out.n_subcarriers = alloc_.total_subcarriers2;
    out.n_symbols = nsym;
    out.bins.resize(out.n_subcarriers * nsym);
    for (int n = 0; n < win; ++n) {
        work_[n] = sig.samples[n] * std::conj(shift_[n]);
    }
    const int per = nu.symbol_samples();
    const double inv_n = 1.0 / nu.n_fft;
    std::span<cplx> spec2(time_.data(), nu.n_fft);
    for (int s = 0; s < nsym; ++s) {
        fft2_.forward(std::span<const cplx>(work_.data() + s * per + nu.n_cp, nu.n_fft), spec2);
        for (int j = 0; j < out.n_subcarriers; ++j) {
            out.bins[s * out.n_subcarriers + j] = spec2[j] * inv_n;
        }
    }
}

}  // namespace detail

SymbolGrid make_symbol_grid(const SpectrumAllocation& alloc, int which) {
    detail::check_which(which);
    SymbolGrid grid;
    grid.numerology_index = which;
    const auto& ranges = (which == 1) ? alloc.ranges1 : alloc.ranges2;
    const auto& order = (which == 1) ? alloc.order1 : alloc.order2;
    grid.n_subcarriers = (which == 1) ? alloc.total_subcarriers1 : alloc.total_subcarriers2;
    grid.n_symbols = (which == 1) ? 1 : alloc.num2_symbols_per_window();
    grid.qam_symbols.assign(static_cast<std::size_t>(grid.n_subcarriers) * grid.n_symbols, cplx{});
    grid.amplitude_scale.resize(grid.n_subcarriers);
    for (std::size_t u = 0; u < order.size(); ++u) {
        const double amp = std::sqrt(std::pow(10.0, order[u].power_db / 10.0));
        for (int j = 0; j < ranges[u].n_subcarriers; ++j) {
            grid.amplitude_scale[ranges[u].first_subcarrier + j] = amp;
        }
    }
    return grid;
}

SymbolGrid draw_symbol_grid(const SpectrumAllocation& alloc, int which, TrialRng& rng) {
    SymbolGrid grid = make_symbol_grid(alloc, which);
    for (cplx& c : grid.qam_symbols) {
        c = rng.qpsk();
    }
    return grid;
}

BasebandSignal synthesize(const SpectrumAllocation& alloc, const SymbolGrid& grid, int which) {
    detail::OfdmContext ctx(alloc);
    BasebandSignal out;
    ctx.synthesize(grid, which, out);
    return out;
}

BasebandSignal compose(const BasebandSignal& a, const BasebandSignal& b) {
    if (a.samples.size() != b.samples.size()) {
        throw DimensionError("compose: length mismatch (" + std::to_string(a.samples.size()) +
                             " vs " + std::to_string(b.samples.size()) + ")");
    }
    if (a.sample_rate_hz != b.sample_rate_hz) {
        throw DimensionError("compose: sample rate mismatch");
    }
    BasebandSignal out;
    out.sample_rate_hz = a.sample_rate_hz;
    out.samples.resize(a.samples.size());
    for (std::size_t n = 0; n < a.samples.size(); ++n) {
        out.samples[n] = a.samples[n] + b.samples[n];
    }
    return out;
}

DemodResult demodulate(const BasebandSignal& sig, const SpectrumAllocation& alloc, int which) {
    detail::OfdmContext ctx(alloc);
    DemodResult out;
    ctx.demodulate(sig, which, out);
    return out;
}

}  // namespace mnsim

#ifndef MNSIM_SRC_OFDM_CONTEXT_HPP
#define MNSIM_SRC_OFDM_CONTEXT_HPP

#include <vector>

#include "fft.hpp"
#include "mnsim/ofdm.hpp"

namespace mnsim::detail {

/// Reusable modem state for one allocation: transform plans, scratch buffers
/// and the precomputed NUM-2 shift table. One instance per worker thread.
class OfdmContext {
  public:
    explicit OfdmContext(const SpectrumAllocation& alloc);

    void synthesize(const SymbolGrid& grid, int which, BasebandSignal& out);
    void demodulate(const BasebandSignal& sig, int which, DemodResult& out);

    const SpectrumAllocation& alloc() const { return alloc_; }

  private:
    SpectrumAllocation alloc_;
    Fft fft1_;
    Fft fft2_;
    std::vector<cplx> shift_;  // e^{+2 pi i b0 n / n_ref} per window sample
    std::vector<cplx> spec_;
    std::vector<cplx> time_;
    std::vector<cplx> work_;
};

void check_which(int which);

}  // namespace mnsim::detail

#endif  // MNSIM_SRC_OFDM_CONTEXT_HPP

#ifndef MNSIM_RNG_HPP
#define MNSIM_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace mnsim {

/// Deterministic substream RNG: stream i of master seed s is mt19937_64(s + i),
/// so trial results are independent of execution order and worker count.
///
/// Draw helpers avoid std::uniform_*_distribution on purpose: their output is
/// implementation-defined, while these mappings are pinned by the code itself.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t stream) : engine_(seed + stream) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n); n must be >= 1.
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Unit-energy QPSK symbol.
    std::complex<double> qpsk() {
        const std::uint64_t bits = engine_();
        constexpr double kInvSqrt2 = 0.7071067811865476;
        return {(bits & 1u) ? kInvSqrt2 : -kInvSqrt2, (bits & 2u) ? kInvSqrt2 : -kInvSqrt2};
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace mnsim

#endif  // MNSIM_RNG_HPP

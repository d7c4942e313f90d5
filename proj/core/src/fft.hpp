#ifndef MNSIM_SRC_FFT_HPP
#define MNSIM_SRC_FFT_HPP

#include <complex>
#include <span>

namespace mnsim::detail {

/// Unnormalized complex transform pair of a fixed size, backed by FFTW.
///
/// forward:  X[m] = sum_n x[n] e^{-2 pi i m n / N}
/// inverse:  x[n] = sum_m X[m] e^{+2 pi i m n / N}
///
/// Plan creation is serialized internally; execution is safe from the owning
/// thread only, so each worker keeps its own instance.
class Fft {
  public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    Fft(Fft&& other) noexcept;
    Fft& operator=(Fft&& other) noexcept;

    void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
    void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

    int size() const { return n_; }

  private:
    int n_ = 0;
    void* plan_fwd_ = nullptr;  // fftw_plan
    void* plan_inv_ = nullptr;
    std::complex<double>* buf_ = nullptr;  // fftw-aligned in-place buffer
};

}  // namespace mnsim::detail

#endif  // MNSIM_SRC_FFT_HPP

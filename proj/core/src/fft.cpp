#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace mnsim::detail {

namespace {
// FFTW planning is not thread-safe; execution of a finished plan is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft::Fft(int n) : n_(n) {
    if (n <= 0) {
        throw std::invalid_argument("Fft: size must be positive");
    }
    buf_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (buf_ == nullptr) {
        throw std::bad_alloc();
    }
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto* raw = reinterpret_cast<fftw_complex*>(buf_);
    plan_fwd_ = fftw_plan_dft_1d(n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_1d(n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (plan_fwd_ == nullptr || plan_inv_ == nullptr) {
        throw std::runtime_error("Fft: plan creation failed");
    }
}

Fft::~Fft() {
    if (plan_fwd_ != nullptr || plan_inv_ != nullptr) {
        std::lock_guard<std::mutex> lock(plan_mutex());
        if (plan_fwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
        if (plan_inv_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    }
    if (buf_ != nullptr) fftw_free(buf_);
}

Fft::Fft(Fft&& other) noexcept
    : n_(other.n_), plan_fwd_(other.plan_fwd_), plan_inv_(other.plan_inv_), buf_(other.buf_) {
    other.plan_fwd_ = nullptr;
    other.plan_inv_ = nullptr;
    other.buf_ = nullptr;
    other.n_ = 0;
}

Fft& Fft::operator=(Fft&& other) noexcept {
    if (this != &other) {
        this->~Fft();
        new (this) Fft(std::move(other));
    }
    return *this;
}

void Fft::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_) {
        throw std::invalid_argument("Fft::forward: span size mismatch");
    }
    std::copy(in.begin(), in.end(), buf_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::copy(buf_, buf_ + n_, out.begin());
}

void Fft::inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_) {
        throw std::invalid_argument("Fft::inverse: span size mismatch");
    }
    std::copy(in.begin(), in.end(), buf_);
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    std::copy(buf_, buf_ + n_, out.begin());
}

}  // namespace mnsim::detail

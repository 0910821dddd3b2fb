#include "fks/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace fks {

namespace {

// FFTW's planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

std::shared_ptr<const RealFft> RealFft::of_size(int n) {
    static std::map<int, std::shared_ptr<const RealFft>> cache;
    std::lock_guard lock(planner_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::shared_ptr<const RealFft> fft(new RealFft(n));
    cache.emplace(n, fft);
    return fft;
}

RealFft::RealFft(int n) : n_(n), forward_plan_(nullptr), inverse_plan_(nullptr) {
    if (n <= 0) throw std::invalid_argument("FFT length must be positive");
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    double* real = fftw_alloc_real(static_cast<size_t>(n));
    fftw_complex* cplx = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
    forward_plan_ = fftw_plan_dft_r2c_1d(n, real, cplx, flags);
    inverse_plan_ = fftw_plan_dft_c2r_1d(n, cplx, real, flags);
    fftw_free(real);
    fftw_free(cplx);
    if (!forward_plan_ || !inverse_plan_) throw std::runtime_error("FFTW planning failed");
}

RealFft::~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
    if (in.size() != static_cast<size_t>(n_) || out.size() != static_cast<size_t>(n_ / 2 + 1)) {
        throw std::invalid_argument("RealFft::forward: size mismatch");
    }
    // r2c plans never write to their input.
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / n_;
    for (auto& c : out) c *= scale;
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
    if (in.size() != static_cast<size_t>(n_ / 2 + 1) || out.size() != static_cast<size_t>(n_)) {
        throw std::invalid_argument("RealFft::inverse: size mismatch");
    }
    // c2r destroys its input, so transform a per-thread copy.
    thread_local std::vector<std::complex<double>> scratch;
    scratch.assign(in.begin(), in.end());
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                         reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

std::string fft_backend_version() { return fftw_version; }

} // namespace fks

#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>

namespace fks {

/// Real-to-half-complex FFT of fixed length backed by FFTW.
///
/// Plans are created once per length with FFTW_ESTIMATE (so the chosen
/// algorithm, and therefore every result bit, does not depend on timing)
/// and shared process-wide. Execution is reentrant: any number of threads
/// may transform distinct arrays through the same instance.
class RealFft {
public:
    static std::shared_ptr<const RealFft> of_size(int n);

    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    int size() const noexcept { return n_; }

    /// out[k] = (1/n) sum_j in[j] exp(-i k x_j), k = 0..n/2.
    void forward(std::span<const double> in, std::span<std::complex<double>> out) const;

    /// out[j] = sum_{k=-n/2+1}^{n/2} c(k) exp(i k x_j) with c(-k) = conj(c(k)).
    /// The input is not modified.
    void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

private:
    explicit RealFft(int n);

    int n_;
    void* forward_plan_;
    void* inverse_plan_;
};

/// Version string reported by the FFT library.
std::string fft_backend_version();

} // namespace fks

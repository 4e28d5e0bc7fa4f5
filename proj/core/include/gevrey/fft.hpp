#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gevrey {

using cplx = std::complex<double>;

/// Unnormalized forward DFT, kernel e^{-2 pi i jk/n}. Safe to call from
/// several threads; plans are created once per length under a lock.
std::vector<cplx> fft(std::vector<cplx> data);

/// Inverse DFT including the 1/n factor.
std::vector<cplx> ifft(std::vector<cplx> data);

/// In-place variants on raw buffers of length n.
void fft_inplace(cplx* data, std::size_t n);
void ifft_inplace(cplx* data, std::size_t n);

/// Frequencies in FFT order for n samples at spacing d (numpy fftfreq layout).
std::vector<double> fft_freqs(std::size_t n, double d);

}  // namespace gevrey

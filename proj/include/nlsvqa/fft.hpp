#pragma once

#include <complex>
#include <span>

namespace nlsvqa {

/// In-place radix-2 FFT. Forward: X_k = sum_j x_j e^{-2 pi i jk/M}, unscaled.
/// Inverse uses e^{+2 pi i jk/M} and scales by 1/M. M must be a power of two.
void fft_inplace(std::span<std::complex<double>> data, bool inverse = false);

} // namespace nlsvqa

#include "nlsvqa/fft.hpp"

#include "nlsvqa/error.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

namespace nlsvqa {

void fft_inplace(std::span<std::complex<double>> data, bool inverse) {
    const std::size_t m = data.size();
    if (m == 0 || !std::has_single_bit(m)) {
        throw UsageError("FFT length must be a power of two");
    }
    if (m == 1) {
        return;
    }

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < m; ++i) {
        std::size_t b = m >> 1;
        for (; j & b; b >>= 1) {
            j ^= b;
        }
        j ^= b;
        if (i < j) {
            std::swap(data[i], data[j]);
        }
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t half = len >> 1;
        for (std::size_t k = 0; k < half; ++k) {
            const auto w = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                               static_cast<double>(len));
            for (std::size_t start = 0; start < m; start += len) {
                const auto u = data[start + k];
                const auto t = w * data[start + k + half];
                data[start + k] = u + t;
                data[start + k + half] = u - t;
            }
        }
    }

    if (inverse) {
        const double scale = 1.0 / static_cast<double>(m);
        for (auto& x : data) {
            x *= scale;
        }
    }
}

} // namespace nlsvqa

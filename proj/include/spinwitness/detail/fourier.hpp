// Radix-2 FFT for the power-of-two sample counts used by the smearing
// transforms. Forward: a_t = sum_s a_s exp(-2*pi*i*s*t/M); inverse carries
// the 1/M factor. Twiddle factors are generated with std::polar per stage
// so coefficient recovery stays near machine precision.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace spinwitness::detail {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: length must be a nonzero power of two");

    for (std::size_t i = 1, rev = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; rev & bit; bit >>= 1) rev ^= bit;
        rev ^= bit;
        if (i < rev) std::swap(a[i], a[rev]);
    }

    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
        for (std::size_t block = 0; block < n; block += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto w = std::polar(1.0, ang * static_cast<double>(k));
                const auto u = a[block + k];
                const auto v = a[block + k + len / 2] * w;
                a[block + k] = u + v;
                a[block + k + len / 2] = u - v;
            }
        }
    }

    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

}  // namespace spinwitness::detail

#include "decoh/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace decoh {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_inplace(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw numerical_error("fft: length must be a power of two");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // Full twiddle table, each entry from std::polar directly (no incremental
    // rotation, which would accumulate O(n eps) phase drift on long grids).
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cplx> tw(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j)
        tw[j] = std::polar(1.0, sign * 2.0 * pi * double(j) / double(n));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * tw[j * stride];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }

    if (inverse) {
        const double inv_n = 1.0 / double(n);
        for (auto& x : a) x *= inv_n;
    }
}

std::vector<double> fft_frequencies(std::size_t n, double dx) {
    std::vector<double> k(n);
    const double dk = 2.0 * pi / (double(n) * dx);
    for (std::size_t m = 0; m < n; ++m) {
        const double idx = (m <= n / 2 - 1 || n == 1) ? double(m) : double(m) - double(n);
        k[m] = dk * idx;
    }
    return k;
}

}  // namespace decoh

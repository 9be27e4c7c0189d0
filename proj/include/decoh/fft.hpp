#pragma once

#include <cstddef>
#include <vector>

#include "decoh/common.hpp"

namespace decoh {

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 FFT; the length must be a power of two.
// Forward sign convention: X_m = sum_j x_j e^{-2 pi i j m / n}; the inverse
// transform includes the 1/n factor. Twiddles are recomputed per stage from
// std::polar, so results are bit-reproducible across runs and thread counts.
void fft_inplace(std::vector<cplx>& a, bool inverse);

// Angular frequencies 2 pi m / (n dx) of the DFT bins in FFT order: bins
// above n/2 wrap to negative frequencies (m - n).
std::vector<double> fft_frequencies(std::size_t n, double dx);

}  // namespace decoh

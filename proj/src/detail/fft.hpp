#pragma once

// Thin thread-safe wrapper over FFTW complex transforms with a plan cache.

#include <complex>
#include <span>

namespace bq::detail {

enum class FftSign { Forward, Backward };

/// Unnormalised complex DFT of a row-major array with one or two axes.
/// `in` and `out` must not alias. Axis 1 is ignored when it equals 1.
void fft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int n0,
         int n1, FftSign sign);

}  // namespace bq::detail

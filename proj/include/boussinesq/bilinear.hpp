#pragma once

/// @file bilinear.hpp
/// Numerical evidence for the product estimates behind the local theory:
/// the low-frequency product bound ||P_1(fg)||_2 <= C ||f||_2 ||g||_2, the
/// dyadic Schur sums that control ||J^{-1} D(fg)||_{H^s}, and a random probe
/// of that operator norm.
///
/// L2 norms here are physical: ||f||_2^2 = (2 pi)^{-n} sum |f_hat|^2 dxi^n.

#include <cstdint>
#include <string_view>
#include <vector>

#include "boussinesq/spectral.hpp"

namespace bq {

/// ||P_1(fg)||_2 / (||f||_2 ||g||_2), with the product computed without
/// aliasing; 0 when f or g vanishes.
[[nodiscard]] double low_block_product_check(const SpectralField& f, const SpectralField& g);

/// Cauchy-Schwarz constant of the check on this lattice,
/// (2 pi)^{-n/2} (sum phi_1^2 dxi^n)^{1/2}; the ratio never exceeds it.
[[nodiscard]] double low_block_constant(const FrequencyGrid& grid);

/// Dyadic sums over output frequency N and input frequencies N1, N2.
///   HighLow:  sup_N  sum_{N2 in {N/2, N, 2N}} sum_{N1 <= 4 N2} N^{-2+2s} N2^{-2s} N1^{n-2s}
///   HighHigh: sup_N2 sum_{N1 in {N2/2, N2, 2 N2}} sum_{1 < N <= 4 N1} N2^{-2s} N1^{-2s} N^{n-2+2s}
/// All frequencies are powers of two; N1, N2 >= 1 and the outer index runs over 2..max_block.
enum class SchurCase { HighLow, HighHigh };

[[nodiscard]] std::string_view to_string(SchurCase kind) noexcept;

struct SchurConfig {
    int dimension = 1;
    double s = 0.0;
    /// Largest outer frequency; a power of two, at least 2^10.
    double max_block = 1048576.0;
};

struct SchurResult {
    SchurCase kind;
    SchurConfig config;
    std::vector<double> outer;        ///< outer frequencies 2, 4, ..., max_block
    std::vector<double> partial;      ///< double sum at each outer frequency
    std::vector<double> running_sup;  ///< max of `partial` up to each outer frequency
    double sup;
    /// (sup(max_block) - sup(max_block / 4)) / sup(max_block)
    double relative_change;
    bool bounded;  ///< relative_change < kSchurStabilityTolerance
    /// Log-log slope of `partial` over the upper half of the octaves.
    double growth_exponent;
};

inline constexpr double kSchurStabilityTolerance = 1e-3;

/// Throws ConfigError for a dimension other than 1 or 2 or an invalid max_block.
[[nodiscard]] SchurResult schur_sum(const SchurConfig& config, SchurCase kind);

/// ||<xi>^{s-1} |xi| (fg)_hat||_2 / (||f||_{H^s} ||g||_{H^s}); 0 when either input vanishes.
[[nodiscard]] double bilinear_ratio(const SpectralField& f, const SpectralField& g, double s);

struct ProbeReport {
    int trials;
    double max_ratio;
    double mean_ratio;
};

/// Largest bilinear_ratio over random real inputs built as superpositions of
/// Littlewood-Paley blocks with log-uniform amplitudes, all supported below
/// Nyquist / 4. Throws ConfigError when s < (n - 2)/2 or trials < 1.
[[nodiscard]] ProbeReport bilinear_ratio_probe(const FrequencyGrid& grid, double s, int trials, std::uint64_t seed);

}  // namespace bq

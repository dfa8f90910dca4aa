#pragma once

/// @file spectral.hpp
/// Uniform frequency lattices, transforms, Sobolev norms and the
/// Littlewood-Paley decomposition.
///
/// A grid discretises the torus [0, 2L)^n with M_j points per axis, so the
/// frequency lattice is xi_k = pi k / L. Spectral coefficients are stored in
/// continuum normalisation, f_hat(xi_k) ~ integral f(x) exp(-i x xi) dx,
/// which makes lattice sums weighted by (pi/L)^n approximate frequency
/// integrals and lattice convolutions approximate (2 pi)^{-n} f_hat * g_hat.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace bq {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;

class FrequencyGrid {
public:
    /// `points` holds the per-axis sizes; in one dimension only points[0] is used.
    FrequencyGrid(int dimension, double extent, std::array<int, 2> points);

    [[nodiscard]] static FrequencyGrid line(double extent, int points);
    [[nodiscard]] static FrequencyGrid plane(double extent, int points_x, int points_y);
    [[nodiscard]] static FrequencyGrid plane(double extent, int points) {
        return plane(extent, points, points);
    }

    [[nodiscard]] int dimension() const noexcept { return dim_; }
    /// Half-width L of the periodic box.
    [[nodiscard]] double extent() const noexcept { return extent_; }
    [[nodiscard]] int points(int axis) const noexcept { return points_[axis]; }
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(points_[0]) * static_cast<std::size_t>(points_[1]);
    }
    /// Frequency spacing pi / L (identical on every axis).
    [[nodiscard]] double spacing() const noexcept;
    /// Physical spacing 2L / M_axis.
    [[nodiscard]] double cell(int axis) const noexcept;
    /// (pi / L)^n, the weight of one lattice point in frequency integrals.
    [[nodiscard]] double lattice_measure() const noexcept;
    /// Product of the physical spacings.
    [[nodiscard]] double cell_volume() const noexcept;
    /// Largest representable |xi_j| on the given axis.
    [[nodiscard]] double nyquist(int axis) const noexcept;
    /// Smallest per-axis Nyquist frequency.
    [[nodiscard]] double nyquist() const noexcept;

    /// Signed wavenumber k of storage index i on an axis (FFT ordering).
    [[nodiscard]] int wavenumber(int axis, int index) const noexcept;
    /// Signed wavenumbers at a flat storage index (second entry is 0 in 1D).
    [[nodiscard]] std::array<long, 2> wavenumbers(std::size_t flat) const noexcept;
    /// Storage index of the mirrored frequency -xi_k on an axis.
    [[nodiscard]] int mirror(int axis, int index) const noexcept;
    /// Frequency vector at a flat storage index (second entry is 0 in 1D).
    [[nodiscard]] Vec2 frequency(std::size_t flat) const noexcept;
    [[nodiscard]] double modulus(std::size_t flat) const noexcept;
    /// Flat index of -xi.
    [[nodiscard]] std::size_t mirror(std::size_t flat) const noexcept;
    /// Flat index of the lattice point with the given signed wavenumbers,
    /// or size() when it is outside the grid.
    [[nodiscard]] std::size_t index_of(std::array<long, 2> wavenumbers) const noexcept;

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

private:
    int dim_;
    double extent_;
    std::array<int, 2> points_;
};

/// Fourier coefficients on a lattice, continuum-normalised.
struct SpectralField {
    FrequencyGrid grid;
    std::vector<cplx> coeffs;

    [[nodiscard]] static SpectralField zeros(const FrequencyGrid& grid);
    /// Coefficients given by a function of the frequency vector.
    template <class Fn>
    [[nodiscard]] static SpectralField from_symbol(const FrequencyGrid& grid, Fn&& fn) {
        SpectralField f = zeros(grid);
        for (std::size_t i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = fn(grid.frequency(i));
        return f;
    }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(cplx factor);
    /// this += factor * other
    SpectralField& axpy(cplx factor, const SpectralField& other);
};

[[nodiscard]] SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
[[nodiscard]] SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
[[nodiscard]] SpectralField operator*(cplx factor, SpectralField f);

/// Samples on the physical grid x_j = j * cell.
struct PhysicalField {
    FrequencyGrid grid;
    std::vector<cplx> values;
};

[[nodiscard]] PhysicalField to_physical(const SpectralField& f);
[[nodiscard]] SpectralField to_spectral(const PhysicalField& f);

/// (sum_k <xi_k>^{2s} |f_hat_k|^2 (pi/L)^n)^{1/2}.
[[nodiscard]] double sobolev_norm(const SpectralField& f, double s);
/// Weighted lattice norm with an arbitrary nonnegative weight w(xi) in place of <xi>^s.
template <class Weight>
[[nodiscard]] double weighted_norm(const SpectralField& f, Weight&& weight) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        const double w = weight(f.grid.frequency(i));
        acc += w * w * std::norm(f.coeffs[i]);
    }
    return std::sqrt(acc * f.grid.lattice_measure());
}
/// Physical L^p norm by the rectangle rule; p = infinity gives the maximum.
[[nodiscard]] double lp_norm(const PhysicalField& f, double p);
/// max_k |f_hat(-xi_k) - conj(f_hat(xi_k))| / max_k |f_hat(xi_k)|, zero for real fields.
[[nodiscard]] double conjugate_symmetry_residual(const SpectralField& f);
/// Largest imaginary part relative to the largest magnitude.
[[nodiscard]] double imaginary_residual(const PhysicalField& f);

/// Multiply every coefficient by symbol(xi).
template <class Symbol>
[[nodiscard]] SpectralField apply_multiplier(const SpectralField& f, Symbol&& symbol) {
    SpectralField out = f;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] *= symbol(f.grid.frequency(i));
    return out;
}

/// Exact lattice convolution (2 pi)^{-n} sum f_hat(kappa) g_hat(xi - kappa),
/// truncated to the grid. Computed by zero padding so nothing aliases.
[[nodiscard]] SpectralField exact_product(const SpectralField& f, const SpectralField& g);

/// Retained-mode mask of the truncation rule: |k_j| <= fraction * M_j / 2 on every axis.
[[nodiscard]] bool dealias_retained(const FrequencyGrid& grid, std::size_t flat, double fraction) noexcept;
/// Zero every mode removed by the truncation rule.
void dealias(SpectralField& f, double fraction);
/// Fraction of squared l2 mass outside the retained set.
[[nodiscard]] double dealias_leakage(const SpectralField& f, double fraction);
/// Pseudo-spectral product on the native grid followed by truncation. Exact
/// on retained modes when both factors are truncated with fraction <= 2/3.
[[nodiscard]] SpectralField truncated_product(const SpectralField& f, const SpectralField& g,
                                              double fraction);

/// Random field with independent normal coefficients on |xi| <= max_modulus,
/// symmetrised to a real physical field when `real` is set. Nyquist modes
/// are left empty.
[[nodiscard]] SpectralField random_field(const FrequencyGrid& grid, double max_modulus,
                                         std::mt19937_64& rng, bool real = true);

// ---------------------------------------------------------------------------
// Littlewood-Paley decomposition

/// Radial bump: 1 on [0,1], cos^2(pi (r - 1) / 2) on (1,2), 0 beyond.
[[nodiscard]] double lp_bump(double r) noexcept;
/// phi_1 = bump, phi_N(xi) = bump(|xi|/N) - bump(2|xi|/N) for dyadic N >= 2.
[[nodiscard]] double lp_weight(double modulus, double block) noexcept;
/// True when N = 2^k for some k >= 0.
[[nodiscard]] bool is_dyadic(double block) noexcept;
/// Largest dyadic block permitted on the grid (N <= Nyquist / 2).
[[nodiscard]] double max_block(const FrequencyGrid& grid);

/// P_N f. Throws GridError when N is not dyadic or exceeds Nyquist / 2.
[[nodiscard]] SpectralField lp_project(const SpectralField& f, double block);

struct LPBlock {
    double block;
    SpectralField field;
};

/// Blocks 1, 2, ..., max_block(grid). They sum to f on the covered range
/// |xi| <= max_block(grid).
struct LPDecomposition {
    std::vector<LPBlock> blocks;
    double covered_radius;

    [[nodiscard]] SpectralField sum() const;
};

[[nodiscard]] LPDecomposition lp_decompose(const SpectralField& f);

/// max over covered lattice points of |sum_N phi_N(xi) - 1|.
[[nodiscard]] double partition_defect(const FrequencyGrid& grid);

/// ||D^s f_N||_{L^p} / (N^s ||f_N||_{L^p}) with D^s = |xi|^s.
[[nodiscard]] double bernstein_derivative_ratio(const LPBlock& block, double p, double s);
/// ||f_N||_{L^q} / ||f_N||_{L^p}, to be compared against N^{n/p - n/q}.
[[nodiscard]] double bernstein_embedding_ratio(const LPBlock& block, double p, double q);

}  // namespace bq

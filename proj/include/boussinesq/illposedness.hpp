#pragma once

/// @file illposedness.hpp
/// Frequency-localised data, the second Picard iterate A2 and the
/// norm-inflation experiments.
///
/// The data put a flat spectrum of height N^{-s} on two unit bands at +-N
/// (1D) or two rectangles |k1 -+ N| <= 1/2, |k2| <= 1 (2D). After time
/// t(N) the low-frequency part of A2 grows like N^{e(s)} with
///   Gen1D, Gen2D: t = 1/(100 N),   e = -2s - 1
///   KdV1D, KdV2D: t = 1/(100 N^3), e = -2s - 3
///   BBM2D:        t = 1/1000,      e = -2s.
/// Spectral quantities use the convention f_hat(xi) = integral f(x) exp(-i x xi) dx,
/// so products carry a factor (2 pi)^{-n} in frequency.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "boussinesq/propagators.hpp"

namespace bq {

enum class IllposedRegime { Gen1D, KdV1D, Gen2D, KdV2D, BBM2D };

inline constexpr std::array<IllposedRegime, 5> kAllIllposedRegimes{
    IllposedRegime::Gen1D, IllposedRegime::KdV1D, IllposedRegime::Gen2D, IllposedRegime::KdV2D,
    IllposedRegime::BBM2D};

/// Lower-case identifier: gen1d, kdv1d, gen2d, kdv2d, bbm2d.
[[nodiscard]] std::string_view to_string(IllposedRegime regime) noexcept;
[[nodiscard]] std::optional<IllposedRegime> parse_illposed_regime(std::string_view name) noexcept;

[[nodiscard]] int dimension_of(IllposedRegime regime) noexcept;
[[nodiscard]] double time_scale(IllposedRegime regime, double N) noexcept;
[[nodiscard]] double predicted_exponent(IllposedRegime regime, double s) noexcept;
/// Regularity at which the predicted exponent vanishes.
[[nodiscard]] double critical_regularity(IllposedRegime regime) noexcept;
/// Coefficients used when none are supplied. Generic regimes use
/// (a, b, c, d) = (-1, 1, -2, 1/2).
[[nodiscard]] AbcdParams default_params(IllposedRegime regime);
/// Throws RegimeError when `p` does not belong to the regime family.
void require_family(IllposedRegime regime, const AbcdParams& p);

/// Axis-aligned box; one-dimensional boxes use only the first axis.
struct Box {
    Vec2 lo;
    Vec2 hi;
};

struct LocalizedData {
    IllposedRegime regime;
    AbcdParams params;
    double N;
    double s;
    /// N^{-s}
    double amplitude;
    /// Spectral support of each nonzero velocity component.
    std::vector<Box> support;
    /// Initial state on a grid, present when the data were built with one.
    std::optional<StateVector> fields;

    [[nodiscard]] int dimension() const noexcept { return dimension_of(regime); }
    /// Lattice weight of the support indicator: 1 inside, 1/2 on each
    /// boundary face crossed (1/4 at rectangle corners), 0 outside.
    [[nodiscard]] double indicator(const Vec2& xi, double tolerance) const noexcept;
};

/// Continuum description of the data. Throws ConfigError for N < 64.
[[nodiscard]] LocalizedData build_data(IllposedRegime regime, double N, double s,
                                       std::optional<AbcdParams> params = std::nullopt);
/// Same, with the initial state sampled on `grid`. Throws GridError unless the
/// first-axis Nyquist frequency is at least 4N (and at least 4 on the second axis).
[[nodiscard]] LocalizedData build_data(IllposedRegime regime, double N, double s, const FrequencyGrid& grid,
                                       std::optional<AbcdParams> params = std::nullopt);
[[nodiscard]] StateVector materialize(const LocalizedData& data, const FrequencyGrid& grid);

// ---------------------------------------------------------------------------
// Kernels of the second iterate

/// Integrand of A2 in time, integral_0^t Q(s, xi) ds = A2(t, xi), with the
/// convolution over the data support evaluated by tensor Gauss-Legendre of
/// the given order on each clipped box. Components (eta, u[, u2]).
[[nodiscard]] std::array<cplx, 3> q_kernel_fixed(const LocalizedData& data, const Vec2& xi, double s_time,
                                                 double t, int order);
/// Same, with the order doubled from 8 until all components change by less
/// than `tolerance` relative. Throws QuadratureError with the last two values.
[[nodiscard]] std::array<cplx, 3> q_kernel(const LocalizedData& data, const Vec2& xi, double s_time, double t,
                                           double tolerance = 1e-6);
/// Velocity component (u, or u1 in 2D) of q_kernel.
[[nodiscard]] cplx q2_kernel(const LocalizedData& data, const Vec2& xi, double s_time, double t,
                             double tolerance = 1e-6);

struct QuadratureOrders {
    int frequency = 8;     ///< per segment and axis of the outer xi integral
    int convolution = 8;   ///< per axis of each clipped support box
    int time = 16;
};

struct LowFrequencyNorm {
    double value;        ///< at the base orders
    double refined;      ///< at 3/2 times the base orders
    double certificate;  ///< |value - refined| / refined
};

/// ||<xi>^{s'} integral_0^t Q_2(s, xi) ds||_{L^2(low region)} at t = time_scale(regime, N).
/// The low region is |xi| <= 1 (1D) or max |xi_j| <= 2 (2D).
[[nodiscard]] LowFrequencyNorm a2_lowfreq_norm(const LocalizedData& data, double sprime,
                                               const QuadratureOrders& orders = {});
[[nodiscard]] LowFrequencyNorm a2_lowfreq_norm(const LocalizedData& data, double sprime, double t,
                                               const QuadratureOrders& orders);

struct InflationPoint {
    double N;
    double t;
    double norm;
    double certificate;
};

struct InflationReport {
    IllposedRegime regime;
    double s;
    double sprime;
    std::vector<InflationPoint> points;
    double slope;
    double predicted;
    double max_certificate;
    bool pass;  ///< |slope - predicted| <= slope_tolerance
};

inline constexpr double kSlopeTolerance = 0.15;

/// Least-squares slope of log ||A2|| against log N. Throws ConfigError for
/// fewer than three N values.
[[nodiscard]] InflationReport inflation_sweep(IllposedRegime regime, double s, double sprime,
                                              std::span<const double> Ns,
                                              std::optional<AbcdParams> params = std::nullopt,
                                              const QuadratureOrders& orders = {});

/// Least-squares slope of log y against log x.
[[nodiscard]] double loglog_slope(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// Lemma and geometry checks

struct LemmaWitness {
    Vec2 xi;
    Vec2 kappa;
    double s_time;
    double t;
    double lhs;
    double bound;
};

struct LemmaReport {
    IllposedRegime regime;
    double N;
    long samples;
    double min_lhs;
    double bound_at_min;  ///< bound at the sample attaining min_lhs
    double min_margin;    ///< min over samples of lhs - bound
    long violations;
    std::optional<LemmaWitness> witness;  ///< first violation, if any
};

/// Exact left-hand side of the interaction lemma at one configuration; kappa is
/// the frequency of the first data factor (xi_1 in 1D). In 2D the frequency-xi
/// factors are evaluated at t - s when `elapsed` is set and at t otherwise.
[[nodiscard]] double lemma_lhs(IllposedRegime regime, const AbcdParams& p, const Vec2& xi, const Vec2& kappa,
                               double s_time, double t, bool elapsed = true);
/// Right-hand side: 1/32 in 1D, (cos_angle - 1/2)/16 in 2D.
[[nodiscard]] double lemma_bound(IllposedRegime regime, const Vec2& xi, const Vec2& kappa);

/// Samples |xi| in [1/2, 1], kappa and xi - kappa in opposite data supports,
/// 0 <= s <= t <= T(N), and checks lhs >= bound. Two-dimensional regimes check
/// both time arguments of the frequency-xi factors.
[[nodiscard]] LemmaReport lemma_lower_bound_check(IllposedRegime regime, double N, long samples,
                                                  std::uint64_t seed,
                                                  std::optional<AbcdParams> params = std::nullopt);

/// ((xi1 + xi2 - k1 - k2)/|xi - kappa|) ((k1 + k2)/|kappa|)
[[nodiscard]] double kernel_p(const Vec2& xi, const Vec2& kappa) noexcept;
/// (xi - kappa) . kappa / (|xi - kappa| |kappa|)
[[nodiscard]] double cos_beta(const Vec2& xi, const Vec2& kappa) noexcept;

struct GeometryReport {
    double N;
    long samples;
    double max_cos_beta;
    double min_minus_p;
    long violations;
    std::optional<std::array<Vec2, 2>> witness;  ///< (xi, kappa) of the first violation
    [[nodiscard]] bool pass() const noexcept { return violations == 0; }
};

/// Checks cos(beta) <= -3/4 and -p >= 3/4 for kappa in one data rectangle and
/// xi - kappa in the other, over a lattice of `lattice` points per axis of each
/// rectangle (corners included) plus `random_samples` uniform draws.
[[nodiscard]] GeometryReport geometry_check_2d(double N, long random_samples, std::uint64_t seed,
                                               int lattice = 5);

// ---------------------------------------------------------------------------
// Pseudo-spectral second iterate

/// A2(t) for the materialised data (fields must be present).
[[nodiscard]] StateVector picard_a2(const LocalizedData& data, double t, int time_order = 16);
/// A2(t) for an arbitrary band-limited initial state.
[[nodiscard]] StateVector picard_a2(const StateVector& initial, double t, const AbcdParams& p,
                                    int time_order = 16);
/// Symmetric bilinear A2(v, w); A2(v) = A2(v, v).
[[nodiscard]] StateVector picard_bilinear(const StateVector& v, const StateVector& w, double t,
                                          const AbcdParams& p, int time_order = 16);

/// Fraction of the squared l2 mass of `a2` lying in the predicted output
/// supports: |xi| <= 1 or 2N - 1 <= |xi| <= 2N + 1 (1D); S_L or S_H (2D).
[[nodiscard]] double support_fraction(const StateVector& a2, const LocalizedData& data);
/// Lattice norm of the velocity component over the low region, weighted by <xi>^{s'}.
[[nodiscard]] double lowfreq_lattice_norm(const StateVector& a2, double sprime);

}  // namespace bq

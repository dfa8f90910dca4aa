#pragma once

/// @file solver.hpp
/// Pseudo-spectral evolution of the full (abcd) system, its energy, and the
/// comparison of small-amplitude solutions with the first two Picard terms.
///
/// Time stepping is the integrating-factor form of the classical four-stage
/// Runge-Kutta scheme: the linear flow is applied exactly through the
/// propagators and only the quadratic term is integrated numerically. With
/// the quadratic term switched off the scheme reproduces apply_linear.

#include <span>
#include <vector>

#include "boussinesq/duhamel.hpp"

namespace bq {

/// d/dt of the state: the linear multipliers plus the truncated quadratic term.
[[nodiscard]] StateVector nonlinear_rhs(const StateVector& state, const AbcdParams& p,
                                        double fraction = kTwoThirds);
/// The linear part alone, -i xi omega(xi)-type multipliers.
[[nodiscard]] StateVector linear_rhs(const StateVector& state, const AbcdParams& p);

struct EvolveConfig {
    double dt = 1e-2;
    double T = 1.0;
    double dealias = kTwoThirds;
    AbcdParams params = AbcdParams(-1.0, 1.0, -1.0, 1.0, Regime::Generic);
    bool quadratic = true;       ///< false: linear flow only
    int snapshot_every = 0;      ///< record every k-th step; 0 keeps only the ends
    double blowup_factor = 1e6;  ///< abort once the L2 norm exceeds this multiple of the initial norm
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    int steps = 0;
    double step = 0.0;  ///< actual step, T divided by the step count
    /// step times the largest |xi omega| on the grid; recorded, not enforced.
    double phase_per_step = 0.0;

    [[nodiscard]] const StateVector& final_state() const { return states.back(); }
};

/// Evolves to time T with ceil(T / dt) equal steps. Throws ConfigError for
/// invalid settings, AliasingError when the initial state is not band
/// limited, and BlowUpError when the norm guard trips.
[[nodiscard]] Trajectory evolve(const StateVector& initial, const EvolveConfig& config);

/// E = 1/2 integral(-a |grad u|^2 - c |grad eta|^2 + |u|^2 (1 + eta) + eta^2) over
/// the periodic box. Quadratic terms are summed exactly in frequency; the cubic
/// term is integrated on the collocation grid.
[[nodiscard]] double energy(const StateVector& state, const AbcdParams& p);

struct EnergySample {
    double t;
    double E;
    double relative_drift;  ///< |E(t) - E(0)| / |E(0)|
};

/// Energy along a trajectory.
[[nodiscard]] std::vector<EnergySample> energy_series(const Trajectory& trajectory, const AbcdParams& p);
[[nodiscard]] double max_relative_drift(std::span<const EnergySample> series);

/// Real Gaussian bump on the grid, truncated to the retained band:
/// eta = A exp(-|x|^2 / w^2) and u = A w grad exp(-|x|^2 / w^2), which is curl free.
[[nodiscard]] StateVector smooth_bump(const FrequencyGrid& grid, double amplitude, double width,
                                      double fraction = kTwoThirds);

struct PicardDefect {
    double amplitude;
    double defect;       ///< at `amplitude`
    double defect_half;  ///< at amplitude / 2
    double ratio;        ///< defect / defect_half, about 8 for a cubic remainder
};

/// ||evolve(lambda v0, t) - S(t) lambda v0 - lambda^2 A2(v0)(t)||_{L2}.
[[nodiscard]] double picard_defect(const StateVector& data, const AbcdParams& p, double t, double amplitude,
                                   double dt, int time_order = 32);
/// Defects at lambda and lambda / 2 and their ratio.
[[nodiscard]] PicardDefect picard_compare(const StateVector& data, const AbcdParams& p, double t,
                                          double amplitude, double dt, int time_order = 32);

}  // namespace bq

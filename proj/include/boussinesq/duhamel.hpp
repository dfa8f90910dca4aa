#pragma once

/// @file duhamel.hpp
/// Quadratic nonlinearity of the (abcd) system and the bilinear Duhamel
/// operator that produces the second Picard iterate.
///
/// Written as U_t = L U + B(U, U), the quadratic part is
///   1D: B_eta = -i xi (eta u)^ / (1 + b xi^2),   B_u = -i xi (u^2 / 2)^ / (1 + d xi^2),
///   2D: B_eta = -i xi . (eta u)^ / (1 + b |xi|^2), B_u = -i xi (|u|^2 / 2)^ / (1 + d |xi|^2),
/// and B(v, w) is its symmetric polarisation.

#include "boussinesq/propagators.hpp"

namespace bq {

/// Truncation fraction of the two-thirds rule.
inline constexpr double kTwoThirds = 2.0 / 3.0;

/// Throws AliasingError when a component carries more than a 1e-24 fraction
/// of its squared mass outside the retained band.
void require_band_limited(const StateVector& v, double fraction = kTwoThirds);

/// Symmetric bilinear form B(v, w); products are truncated with `fraction`.
[[nodiscard]] StateVector quadratic_term(const StateVector& v, const StateVector& w, const AbcdParams& p,
                                         double fraction = kTwoThirds);

/// integral_0^t S(t - s) B(S(s) v0, S(s) w0) ds by Gauss-Legendre in time.
/// Throws AliasingError when v0 or w0 carries mass outside the retained set.
[[nodiscard]] StateVector duhamel_bilinear(const StateVector& v0, const StateVector& w0, double t,
                                           const AbcdParams& p, int time_order = 16,
                                           double fraction = kTwoThirds);

}  // namespace bq

#pragma once

/// @file propagators.hpp
/// Exact linear flows of the (abcd) system as Fourier multiplier matrices
/// and the diagonalising change of variables.
///
/// One dimension: with phase theta = xi * disp(xi) * t,
///   S(t) = [[cos theta, -i h sin theta], [-i sin theta / h, cos theta]].
/// Two dimensions: S(t) = exp(-i |xi| A(xi) t) where A(xi) is the linear
/// operator matrix. Writing e = xi / |xi| and theta = |xi| disp(|xi|) t,
///   S_00 = cos theta, S_0j = -i vs e_j sin theta, S_j0 = -i e_j sin theta / vs,
///   S_jk = delta_jk + e_j e_k (cos theta - 1),
/// which leaves the rotational component of the velocity untouched and is
/// the identity at xi = 0.

#include <array>
#include <vector>

#include "boussinesq/spectral.hpp"
#include "boussinesq/symbols.hpp"

namespace bq {

using Matrix2 = std::array<std::array<cplx, 2>, 2>;
using Matrix3 = std::array<std::array<cplx, 3>, 3>;

/// (eta, u) in one dimension, (eta, u1, u2) in two. Components share a grid.
struct StateVector {
    std::vector<SpectralField> components;

    [[nodiscard]] static StateVector zeros(const FrequencyGrid& grid);
    [[nodiscard]] static StateVector from_components(std::vector<SpectralField> components);

    [[nodiscard]] int dimension() const noexcept { return components.front().grid.dimension(); }
    [[nodiscard]] const FrequencyGrid& grid() const noexcept { return components.front().grid; }
    [[nodiscard]] SpectralField& eta() noexcept { return components[0]; }
    [[nodiscard]] const SpectralField& eta() const noexcept { return components[0]; }
    /// Velocity component, axis 0 or 1.
    [[nodiscard]] SpectralField& velocity(int axis) noexcept { return components[1 + axis]; }
    [[nodiscard]] const SpectralField& velocity(int axis) const noexcept { return components[1 + axis]; }

    StateVector& operator+=(const StateVector& other);
    StateVector& operator-=(const StateVector& other);
    StateVector& operator*=(cplx factor);
    StateVector& axpy(cplx factor, const StateVector& other);
};

[[nodiscard]] StateVector operator+(StateVector lhs, const StateVector& rhs);
[[nodiscard]] StateVector operator-(StateVector lhs, const StateVector& rhs);
[[nodiscard]] StateVector operator*(cplx factor, StateVector v);

/// sqrt(sum over components of sobolev_norm^2).
[[nodiscard]] double state_norm(const StateVector& v, double s = 0.0);
/// max |xi_1 u2_hat - xi_2 u1_hat| relative to max |xi| |u_hat|; zero in 1D.
[[nodiscard]] double curl_residual(const StateVector& v);

/// Image of a state under the diagonalising change of variables:
/// (v, w) in one dimension, (mu, nu1, nu2) in two.
struct DiagonalState {
    std::vector<SpectralField> components;
};

[[nodiscard]] Matrix2 propagator_1d(double xi, double t, const AbcdParams& p);
[[nodiscard]] Matrix3 propagator_2d(const Vec2& xi, double t, const AbcdParams& p);

[[nodiscard]] StateVector apply_linear_1d(const StateVector& state, double t, const AbcdParams& p);
[[nodiscard]] StateVector apply_linear_2d(const StateVector& state, double t, const AbcdParams& p);
/// Dispatch on the state dimension.
[[nodiscard]] StateVector apply_linear(const StateVector& state, double t, const AbcdParams& p);

/// The 3x3 linear operator matrix A(xi); requires xi != 0.
[[nodiscard]] Matrix3 linear_operator_matrix(const Vec2& xi, const AbcdParams& p);

struct Diagonalization {
    Matrix3 P;
    Matrix3 Pinv;
    std::array<double, 3> eigenvalues;  ///< (0, disp, -disp)
};

/// Eigen-decomposition of A(xi). Throws DomainError at xi = 0.
[[nodiscard]] Diagonalization diagonalize_2d(const Vec2& xi, const AbcdParams& p);

/// In one dimension eta = h (v + w), u = v - w. In two dimensions the
/// eigenvector basis of A(xi); the zero mode uses the direction (1, 0).
[[nodiscard]] DiagonalState to_diagonal(const StateVector& state, const AbcdParams& p);
[[nodiscard]] StateVector from_diagonal(const DiagonalState& diag, const AbcdParams& p);

/// Phase factors of the diagonal flow per component: 1D (v, w) rotate by
/// exp(-i theta) and exp(+i theta); 2D (mu, nu1, nu2) by 1, exp(-i theta), exp(+i theta).
[[nodiscard]] DiagonalState advance_diagonal(const DiagonalState& diag, double t, const AbcdParams& p);

[[nodiscard]] Matrix3 multiply(const Matrix3& x, const Matrix3& y) noexcept;

}  // namespace bq

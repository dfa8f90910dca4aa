#include "boussinesq/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "boussinesq/errors.hpp"

namespace bq {
namespace {

constexpr cplx I{0.0, 1.0};

void require_compatible(const StateVector& a, const StateVector& b) {
    if (a.components.size() != b.components.size() || !(a.grid() == b.grid())) {
        throw GridError("state vectors have different shapes");
    }
}

/// Unit direction and modulus; the origin maps to the reference direction (1, 0).
struct Polar {
    double modulus;
    Vec2 direction;
};

Polar polar(const Vec2& xi) {
    const double r = std::hypot(xi[0], xi[1]);
    if (r == 0.0) return {0.0, {1.0, 0.0}};
    return {r, {xi[0] / r, xi[1] / r}};
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector StateVector::zeros(const FrequencyGrid& grid) {
    const std::size_t n = grid.dimension() == 1 ? 2 : 3;
    return StateVector{std::vector<SpectralField>(n, SpectralField::zeros(grid))};
}

StateVector StateVector::from_components(std::vector<SpectralField> components) {
    if (components.empty()) throw GridError("state vector needs components");
    const FrequencyGrid& g = components.front().grid;
    const std::size_t expected = g.dimension() == 1 ? 2 : 3;
    if (components.size() != expected) throw GridError("component count does not match dimension");
    for (const auto& c : components) {
        if (!(c.grid == g)) throw GridError("state components must share one grid");
    }
    return StateVector{std::move(components)};
}

StateVector& StateVector::operator+=(const StateVector& other) { return axpy(1.0, other); }

StateVector& StateVector::operator-=(const StateVector& other) { return axpy(-1.0, other); }

StateVector& StateVector::operator*=(cplx factor) {
    for (auto& c : components) c *= factor;
    return *this;
}

StateVector& StateVector::axpy(cplx factor, const StateVector& other) {
    require_compatible(*this, other);
    for (std::size_t i = 0; i < components.size(); ++i) components[i].axpy(factor, other.components[i]);
    return *this;
}

StateVector operator+(StateVector lhs, const StateVector& rhs) { return lhs += rhs; }
StateVector operator-(StateVector lhs, const StateVector& rhs) { return lhs -= rhs; }
StateVector operator*(cplx factor, StateVector v) { return v *= factor; }

double state_norm(const StateVector& v, double s) {
    double acc = 0.0;
    for (const auto& c : v.components) {
        const double n = sobolev_norm(c, s);
        acc += n * n;
    }
    return std::sqrt(acc);
}

double curl_residual(const StateVector& v) {
    if (v.dimension() == 1) return 0.0;
    const FrequencyGrid& g = v.grid();
    double residual = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec2 xi = g.frequency(i);
        const cplx u1 = v.velocity(0).coeffs[i];
        const cplx u2 = v.velocity(1).coeffs[i];
        residual = std::max(residual, std::abs(xi[0] * u2 - xi[1] * u1));
        scale = std::max(scale, std::hypot(xi[0], xi[1]) * std::max(std::abs(u1), std::abs(u2)));
    }
    return scale > 0.0 ? residual / scale : 0.0;
}

// ---------------------------------------------------------------------------
// Multiplier matrices

Matrix2 propagator_1d(double xi, double t, const AbcdParams& p) {
    const double theta = xi * eval_dispersion(std::abs(xi), p) * t;
    const double h = eval_h(xi, p);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return Matrix2{{{c, -I * h * s}, {-I * s / h, c}}};
}

Matrix3 propagator_2d(const Vec2& xi, double t, const AbcdParams& p) {
    const auto [r, e] = polar(xi);
    if (r == 0.0) {
        return Matrix3{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
    }
    const double theta = r * eval_dispersion(r, p) * t;
    const double vs = eval_varsigma(r, p);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Matrix3 m{};
    m[0][0] = c;
    for (int j = 0; j < 2; ++j) {
        m[0][j + 1] = -I * vs * e[j] * s;
        m[j + 1][0] = -I * e[j] * s / vs;
        for (int k = 0; k < 2; ++k) m[j + 1][k + 1] = (j == k ? 1.0 : 0.0) + e[j] * e[k] * (c - 1.0);
    }
    return m;
}

StateVector apply_linear_1d(const StateVector& state, double t, const AbcdParams& p) {
    if (state.dimension() != 1) throw GridError("apply_linear_1d needs a one-dimensional state");
    StateVector out = state;
    const FrequencyGrid& g = state.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Matrix2 m = propagator_1d(g.frequency(i)[0], t, p);
        const cplx eta = state.components[0].coeffs[i];
        const cplx u = state.components[1].coeffs[i];
        out.components[0].coeffs[i] = m[0][0] * eta + m[0][1] * u;
        out.components[1].coeffs[i] = m[1][0] * eta + m[1][1] * u;
    }
    return out;
}

StateVector apply_linear_2d(const StateVector& state, double t, const AbcdParams& p) {
    if (state.dimension() != 2) throw GridError("apply_linear_2d needs a two-dimensional state");
    StateVector out = state;
    const FrequencyGrid& g = state.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Matrix3 m = propagator_2d(g.frequency(i), t, p);
        const std::array<cplx, 3> in{state.components[0].coeffs[i], state.components[1].coeffs[i],
                                     state.components[2].coeffs[i]};
        for (int r = 0; r < 3; ++r) out.components[r].coeffs[i] = m[r][0] * in[0] + m[r][1] * in[1] + m[r][2] * in[2];
    }
    return out;
}

StateVector apply_linear(const StateVector& state, double t, const AbcdParams& p) {
    return state.dimension() == 1 ? apply_linear_1d(state, t, p) : apply_linear_2d(state, t, p);
}

// ---------------------------------------------------------------------------
// Diagonalisation

Matrix3 linear_operator_matrix(const Vec2& xi, const AbcdParams& p) {
    const auto [r, e] = polar(xi);
    if (r == 0.0) throw DomainError("linear operator matrix is undefined at xi = 0");
    const auto [w_eta, w_u] = eval_omega(r, p);
    return Matrix3{{{0.0, e[0] * w_eta, e[1] * w_eta}, {e[0] * w_u, 0.0, 0.0}, {e[1] * w_u, 0.0, 0.0}}};
}

namespace {

Diagonalization eigenbasis(const Polar& pol, const AbcdParams& p) {
    const auto& e = pol.direction;
    const double vs = eval_varsigma(pol.modulus, p);
    const double disp = eval_dispersion(pol.modulus, p);
    Diagonalization out{};
    out.P = Matrix3{{{0.0, vs, -vs}, {-e[1], e[0], e[0]}, {e[0], e[1], e[1]}}};
    out.Pinv = Matrix3{{{0.0, -e[1], e[0]},
                        {0.5 / vs, 0.5 * e[0], 0.5 * e[1]},
                        {-0.5 / vs, 0.5 * e[0], 0.5 * e[1]}}};
    out.eigenvalues = {0.0, disp, -disp};
    return out;
}

}  // namespace

Diagonalization diagonalize_2d(const Vec2& xi, const AbcdParams& p) {
    const Polar pol = polar(xi);
    if (pol.modulus == 0.0) throw DomainError("diagonalisation is singular at xi = 0");
    return eigenbasis(pol, p);
}

Matrix3 multiply(const Matrix3& x, const Matrix3& y) noexcept {
    Matrix3 z{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) z[i][j] += x[i][k] * y[k][j];
    return z;
}

DiagonalState to_diagonal(const StateVector& state, const AbcdParams& p) {
    const FrequencyGrid& g = state.grid();
    DiagonalState out{state.components};
    if (state.dimension() == 1) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double h = eval_h(g.frequency(i)[0], p);
            const cplx eta = state.components[0].coeffs[i];
            const cplx u = state.components[1].coeffs[i];
            out.components[0].coeffs[i] = 0.5 * (eta / h + u);
            out.components[1].coeffs[i] = 0.5 * (eta / h - u);
        }
        return out;
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Matrix3 pinv = eigenbasis(polar(g.frequency(i)), p).Pinv;
        const std::array<cplx, 3> in{state.components[0].coeffs[i], state.components[1].coeffs[i],
                                     state.components[2].coeffs[i]};
        for (int r = 0; r < 3; ++r) out.components[r].coeffs[i] = pinv[r][0] * in[0] + pinv[r][1] * in[1] + pinv[r][2] * in[2];
    }
    return out;
}

StateVector from_diagonal(const DiagonalState& diag, const AbcdParams& p) {
    StateVector out{diag.components};
    const FrequencyGrid& g = out.grid();
    if (out.dimension() == 1) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double h = eval_h(g.frequency(i)[0], p);
            const cplx v = diag.components[0].coeffs[i];
            const cplx w = diag.components[1].coeffs[i];
            out.components[0].coeffs[i] = h * (v + w);
            out.components[1].coeffs[i] = v - w;
        }
        return out;
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Matrix3 pm = eigenbasis(polar(g.frequency(i)), p).P;
        const std::array<cplx, 3> in{diag.components[0].coeffs[i], diag.components[1].coeffs[i],
                                     diag.components[2].coeffs[i]};
        for (int r = 0; r < 3; ++r) out.components[r].coeffs[i] = pm[r][0] * in[0] + pm[r][1] * in[1] + pm[r][2] * in[2];
    }
    return out;
}

DiagonalState advance_diagonal(const DiagonalState& diag, double t, const AbcdParams& p) {
    DiagonalState out = diag;
    const FrequencyGrid& g = diag.components.front().grid;
    const bool one_d = g.dimension() == 1;
    const std::size_t first_wave = one_d ? 0 : 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec2 xi = g.frequency(i);
        const double r = one_d ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
        const double signed_freq = one_d ? xi[0] : r;
        const double theta = signed_freq * eval_dispersion(r, p) * t;
        const cplx forward = std::polar(1.0, -theta);
        out.components[first_wave].coeffs[i] *= forward;
        out.components[first_wave + 1].coeffs[i] *= std::conj(forward);
    }
    return out;
}

}  // namespace bq

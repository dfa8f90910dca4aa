#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "boussinesq/diagnostics.hpp"
#include "boussinesq/errors.hpp"
#include "boussinesq/propagators.hpp"

using namespace bq;
using doctest::Approx;

namespace {

std::vector<AbcdParams> all_regimes() {
    return {AbcdParams(-1.0, 1.0, -2.0, 0.5, Regime::Generic), AbcdParams::kdv_kdv(), AbcdParams::bbm_bbm(),
            AbcdParams(0.4, 0.3, 0.4, 0.3, Regime::GenericAB)};
}

StateVector random_state(const FrequencyGrid& g, std::mt19937_64& rng, double band = 1e9) {
    StateVector v = StateVector::zeros(g);
    for (auto& c : v.components) c = random_field(g, band, rng, true);
    return v;
}

/// Irrotational velocity u = grad(phi) with eta independent.
StateVector random_irrotational(const FrequencyGrid& g, std::mt19937_64& rng) {
    StateVector v = StateVector::zeros(g);
    v.eta() = random_field(g, 1e9, rng, true);
    const SpectralField phi = random_field(g, 1e9, rng, true);
    for (int axis = 0; axis < 2; ++axis) {
        v.velocity(axis) = apply_multiplier(phi, [axis](const Vec2& xi) { return cplx{0.0, xi[axis]}; });
    }
    return v;
}

double relative_error(const StateVector& a, const StateVector& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t c = 0; c < a.components.size(); ++c) {
        for (std::size_t i = 0; i < a.components[c].coeffs.size(); ++i) {
            num = std::max(num, std::abs(a.components[c].coeffs[i] - b.components[c].coeffs[i]));
            den = std::max(den, std::abs(b.components[c].coeffs[i]));
        }
    }
    return den > 0.0 ? num / den : num;
}

/// exp(M) of a 3x3 matrix by scaling, truncated Taylor series and squaring.
Matrix3 matrix_exponential(Matrix3 m) {
    double norm = 0.0;
    for (auto& row : m)
        for (auto v : row) norm = std::max(norm, std::abs(v));
    int squarings = 0;
    while (norm > 0.1) {
        norm /= 2.0;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    for (auto& row : m)
        for (auto& v : row) v *= scale;
    Matrix3 result{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
    Matrix3 term = result;
    for (int k = 1; k < 30; ++k) {
        term = multiply(term, m);
        for (auto& row : term)
            for (auto& v : row) v /= static_cast<double>(k);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) result[i][j] += term[i][j];
    }
    for (int s = 0; s < squarings; ++s) result = multiply(result, result);
    return result;
}

const FrequencyGrid kLine = FrequencyGrid::line(4.0 * M_PI, 64);
const FrequencyGrid kPlane = FrequencyGrid::plane(4.0 * M_PI, 32, 32);

}  // namespace

TEST_CASE("identity at t = 0") {
    std::mt19937_64 rng(1);
    for (const auto& p : all_regimes()) {
        for (const auto& g : {kLine, kPlane}) {
            const StateVector v = random_state(g, rng);
            CHECK(relative_error(apply_linear(v, 0.0, p), v) == 0.0);
        }
    }
}

TEST_CASE("one-dimensional closed-form rotation") {
    const AbcdParams p(-1, 1, -1, 1, Regime::Generic);
    StateVector v = StateVector::zeros(kLine);
    const std::size_t k = kLine.index_of({3, 0});
    v.velocity(0).coeffs[k] = 1.0;
    const double xi0 = kLine.frequency(k)[0];
    const double t = 0.7;
    const StateVector out = apply_linear_1d(v, t, p);
    CHECK(std::abs(out.eta().coeffs[k] - cplx{0.0, -std::sin(xi0 * t)}) < 1e-15);
    CHECK(std::abs(out.velocity(0).coeffs[k] - std::cos(xi0 * t)) < 1e-15);
}

TEST_CASE("group laws in every regime and dimension") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> time(-1.0, 1.0);
    for (const auto& p : all_regimes()) {
        for (const auto& g : {kLine, kPlane}) {
            for (int trial = 0; trial < 3; ++trial) {
                const StateVector v = random_state(g, rng);
                const double t1 = time(rng), t2 = time(rng);
                const StateVector composed = apply_linear(apply_linear(v, t2, p), t1, p);
                CHECK(relative_error(composed, apply_linear(v, t1 + t2, p)) < 1e-12);
                CHECK(relative_error(apply_linear(apply_linear(v, t1, p), -t1, p), v) < 1e-12);
            }
        }
    }
}

TEST_CASE("two-dimensional propagator is the exponential of the linear operator") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> comp(-5.0, 5.0), time(-0.5, 0.5);
    for (const auto& p : all_regimes()) {
        for (int trial = 0; trial < 50; ++trial) {
            const Vec2 xi{comp(rng), comp(rng)};
            const double t = time(rng);
            Matrix3 generator = linear_operator_matrix(xi, p);
            const double r = std::hypot(xi[0], xi[1]);
            for (auto& row : generator)
                for (auto& v : row) v *= cplx{0.0, -r * t};
            const Matrix3 expected = matrix_exponential(generator);
            const Matrix3 actual = propagator_2d(xi, t, p);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) CHECK(std::abs(actual[i][j] - expected[i][j]) < 1e-11);
        }
    }
}

TEST_CASE("one-dimensional propagator solves the linear system") {
    // d/dt S(t) at t = 0 equals -i xi [[0, omega_eta], [omega_u, 0]].
    for (const auto& p : all_regimes()) {
        for (double xi : {-3.0, -0.4, 0.9, 2.5}) {
            const double dt = 1e-6;
            const Matrix2 plus = propagator_1d(xi, dt, p);
            const Matrix2 minus = propagator_1d(xi, -dt, p);
            const auto w = eval_omega(xi, p);
            CHECK(std::abs((plus[0][1] - minus[0][1]) / (2 * dt) - cplx{0.0, -xi * w.eta}) < 1e-6);
            CHECK(std::abs((plus[1][0] - minus[1][0]) / (2 * dt) - cplx{0.0, -xi * w.velocity}) < 1e-6);
        }
    }
}

TEST_CASE("diagonal path agrees with the direct multiplier path") {
    std::mt19937_64 rng(4);
    for (const auto& p : all_regimes()) {
        for (const auto& g : {kLine, kPlane}) {
            const StateVector v = random_state(g, rng);
            const double t = 0.83;
            const StateVector oracle = from_diagonal(advance_diagonal(to_diagonal(v, p), t, p), p);
            CHECK(relative_error(apply_linear(v, t, p), oracle) < 1e-12);

            // Moduli of the diagonal variables are conserved pointwise.
            const DiagonalState before = to_diagonal(v, p);
            const DiagonalState after = to_diagonal(apply_linear(v, t, p), p);
            double worst = 0.0;
            for (std::size_t c = 0; c < before.components.size(); ++c)
                for (std::size_t i = 0; i < g.size(); ++i)
                    worst = std::max(worst, std::abs(std::abs(after.components[c].coeffs[i]) -
                                                     std::abs(before.components[c].coeffs[i])));
            CHECK(worst < 1e-12 * state_norm(v) / std::sqrt(g.lattice_measure()));
        }
    }
}

TEST_CASE("h-weighted norm is conserved in one dimension") {
    std::mt19937_64 rng(5);
    const AbcdParams p(-1.0, 1.0, -2.0, 0.5, Regime::Generic);
    const StateVector v = random_state(kLine, rng);
    auto weighted = [&](const StateVector& s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < kLine.size(); ++i) {
            const double xi = kLine.frequency(i)[0];
            acc += (std::norm(s.eta().coeffs[i] / eval_h(xi, p)) + std::norm(s.velocity(0).coeffs[i])) *
                   std::pow(1 + xi * xi, 1.5);
        }
        return acc;
    };
    CHECK(weighted(apply_linear(v, 2.3, p)) == Approx(weighted(v)).epsilon(1e-12));
}

TEST_CASE("real input stays real") {
    std::mt19937_64 rng(6);
    for (const auto& p : all_regimes()) {
        for (const auto& g : {kLine, kPlane}) {
            const StateVector out = apply_linear(random_state(g, rng), 1.7, p);
            for (const auto& c : out.components) CHECK(conjugate_symmetry_residual(c) < 1e-13);
        }
    }
}

TEST_CASE("irrotational states stay irrotational") {
    std::mt19937_64 rng(7);
    for (const auto& p : all_regimes()) {
        const StateVector v = random_irrotational(kPlane, rng);
        CHECK(curl_residual(v) < 1e-14);
        CHECK(curl_residual(apply_linear_2d(v, 1.3, p)) < 1e-12);
        const DiagonalState d = to_diagonal(v, p);
        double worst = 0.0;
        for (std::size_t i = 1; i < kPlane.size(); ++i) worst = std::max(worst, std::abs(d.components[0].coeffs[i]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("BBM phase advance in diagonal variables") {
    const auto p = AbcdParams::bbm_bbm();
    const auto g = FrequencyGrid::plane(4.0 * M_PI / std::sqrt(6.0), 16, 16);
    StateVector v = StateVector::zeros(g);
    const std::size_t k = g.index_of({4, 0});
    CHECK(g.modulus(k) == Approx(std::sqrt(6.0)).epsilon(1e-14));
    v.eta().coeffs[k] = 1.0;
    v.velocity(0).coeffs[k] = 0.5;
    const double t = 0.9;
    const DiagonalState before = to_diagonal(v, p);
    const DiagonalState after = to_diagonal(apply_linear_2d(v, t, p), p);
    const cplx ratio = after.components[1].coeffs[k] / before.components[1].coeffs[k];
    CHECK(std::arg(ratio) == Approx(-std::sqrt(6.0) / 2.0 * t).epsilon(1e-13));
    CHECK(std::abs(ratio) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("diagonalisation of the two-dimensional operator") {
    const AbcdParams flat(-1, 1, -1, 1, Regime::Generic);
    const auto d = diagonalize_2d({1.0, 0.0}, flat);
    CHECK(d.eigenvalues[0] == 0.0);
    CHECK(d.eigenvalues[1] == Approx(1.0));
    CHECK(d.eigenvalues[2] == Approx(-1.0));

    const auto column = diagonalize_2d({0.0, 1.0}, flat).P;
    CHECK(column[0][0] == cplx{0.0, 0.0});
    CHECK(column[1][0] == cplx{-1.0, 0.0});
    CHECK(column[2][0] == cplx{0.0, 0.0});

    CHECK_THROWS_AS((void)diagonalize_2d({0.0, 0.0}, flat), DomainError);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> neg(-3.0, -0.1), pos(0.1, 3.0), comp(-50.0, 50.0);
    double worst_inverse = 0.0, worst_diag = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const AbcdParams p(neg(rng), pos(rng), neg(rng), pos(rng), Regime::Generic);
        const Vec2 xi{comp(rng), comp(rng)};
        const auto dg = diagonalize_2d(xi, p);
        const Matrix3 id = multiply(dg.P, dg.Pinv);
        const Matrix3 lam = multiply(dg.Pinv, multiply(linear_operator_matrix(xi, p), dg.P));
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                worst_inverse = std::max(worst_inverse, std::abs(id[i][j] - (i == j ? 1.0 : 0.0)));
                worst_diag = std::max(worst_diag, std::abs(lam[i][j] - (i == j ? dg.eigenvalues[i] : 0.0)));
            }
        }
    }
    CHECK(worst_inverse < 1e-12);
    CHECK(worst_diag < 1e-12);
}

TEST_CASE("change of variables") {
    std::mt19937_64 rng(9);
    const AbcdParams p(-1.0, 1.0, -2.0, 0.5, Regime::Generic);
    StateVector v = StateVector::zeros(kLine);
    v.velocity(0) = random_field(kLine, 1e9, rng, true);
    const DiagonalState d = to_diagonal(v, p);
    for (std::size_t i = 0; i < kLine.size(); ++i) {
        CHECK(std::abs(d.components[0].coeffs[i] - 0.5 * v.velocity(0).coeffs[i]) < 1e-15);
        CHECK(std::abs(d.components[1].coeffs[i] + 0.5 * v.velocity(0).coeffs[i]) < 1e-15);
    }
    for (const auto& q : all_regimes()) {
        for (const auto& g : {kLine, kPlane}) {
            const StateVector s = random_state(g, rng);
            CHECK(relative_error(from_diagonal(to_diagonal(s, q), q), s) < 1e-12);
        }
    }
}

TEST_CASE("randomised linear diagnostics") {
    const CheckResult diag = diagonalization_check(500, 3);
    CHECK(diag.pass());
    CHECK(diag.samples == 500);
    CHECK(diagonalization_check(50, 3).max_error == diagonalization_check(50, 3).max_error);
    const std::vector<CheckResult> laws = semigroup_checks(1, 4);
    CHECK(laws.size() == 4 * 2 * 4);
    for (const CheckResult& c : laws) {
        CAPTURE(c.check);
        CAPTURE(c.regime);
        CHECK(c.pass());
    }
}

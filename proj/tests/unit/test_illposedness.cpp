#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "boussinesq/errors.hpp"
#include "boussinesq/illposedness.hpp"
#include "support/q2_oracle.hpp"

using namespace bq;
using doctest::Approx;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

oracle::Coeffs coeffs_of(const AbcdParams& p) { return {p.a(), p.b(), p.c(), p.d()}; }

// The library writes the system as U_t = L U + B(U, U) with f_hat = integral f e^{-ix xi};
// the closed-form integrand is stated for +d/dx with unnormalised convolution.
cplx oracle_in_library_units(const LocalizedData& data, double xi, double s_time, double t) {
    return -oracle::richardson(data.N, data.amplitude, xi, s_time, t, coeffs_of(data.params)) / kTwoPi;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

StateVector random_band_state(const FrequencyGrid& g, double band, std::mt19937_64& rng) {
    StateVector v = StateVector::zeros(g);
    for (auto& c : v.components) c = random_field(g, band, rng, true);
    return v;
}

double relative_gap(const StateVector& a, const StateVector& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t c = 0; c < a.components.size(); ++c) {
        for (std::size_t i = 0; i < a.components[c].coeffs.size(); ++i) {
            num += std::norm(a.components[c].coeffs[i] - b.components[c].coeffs[i]);
            den += std::norm(b.components[c].coeffs[i]);
        }
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("regime tables") {
    CHECK(time_scale(IllposedRegime::Gen1D, 100.0) == Approx(1e-4));
    CHECK(time_scale(IllposedRegime::KdV2D, 10.0) == Approx(1e-5));
    CHECK(time_scale(IllposedRegime::BBM2D, 12345.0) == Approx(1e-3));
    CHECK(predicted_exponent(IllposedRegime::Gen1D, -1.0) == Approx(1.0));
    CHECK(predicted_exponent(IllposedRegime::KdV2D, -2.0) == Approx(1.0));
    CHECK(predicted_exponent(IllposedRegime::BBM2D, -0.5) == Approx(1.0));
    for (IllposedRegime r : kAllIllposedRegimes) {
        CHECK(parse_illposed_regime(to_string(r)) == r);
        CHECK(predicted_exponent(r, critical_regularity(r)) == Approx(0.0));
        CHECK_NOTHROW(require_family(r, default_params(r)));
    }
    CHECK_FALSE(parse_illposed_regime("kdv3d").has_value());
    CHECK_THROWS_AS(require_family(IllposedRegime::BBM2D, AbcdParams::kdv_kdv()), RegimeError);
}

TEST_CASE("localised data") {
    CHECK_THROWS_AS((void)build_data(IllposedRegime::Gen1D, 32.0, 0.0), ConfigError);

    SUBCASE("1D bands at +-64 with unit height") {
        const FrequencyGrid grid = FrequencyGrid::line(16.0 * std::numbers::pi, 8192);  // spacing 1/16
        const LocalizedData data = build_data(IllposedRegime::Gen1D, 64.0, 0.0, grid);
        const SpectralField& u = data.fields->velocity(0);
        CHECK(u.coeffs[grid.index_of({64 * 16, 0})].real() == Approx(1.0));
        CHECK(u.coeffs[grid.index_of({-64 * 16 + 3, 0})].real() == Approx(1.0));
        CHECK(u.coeffs[grid.index_of({64 * 16 + 8, 0})].real() == Approx(0.5));
        CHECK(u.coeffs[grid.index_of({64 * 16 + 9, 0})] == cplx{});
        CHECK(std::abs(u.coeffs[grid.index_of({0, 0})]) == 0.0);
        for (const SpectralField& eta = data.fields->eta(); cplx c : eta.coeffs) CHECK(c == cplx{});
    }

    SUBCASE("Sobolev size stays of order one") {
        for (double s : {-2.0, -1.0, 0.0, 0.5}) {
            const FrequencyGrid line = FrequencyGrid::line(8.0 * std::numbers::pi, 8192);
            const LocalizedData d1 = build_data(IllposedRegime::Gen1D, 128.0, s, line);
            const double n1 = sobolev_norm(d1.fields->velocity(0), s);
            CHECK(n1 >= 0.5);
            CHECK(n1 <= 2.0);
            CHECK(n1 == Approx(std::sqrt(2.0)).epsilon(0.02));
        }
    }

    SUBCASE("2D rectangles have measure four") {
        const FrequencyGrid plane = FrequencyGrid::plane(8.0 * std::numbers::pi, 4096, 64);
        const LocalizedData d2 = build_data(IllposedRegime::Gen2D, 64.0, 0.0, plane);
        double measure = 0.0;
        for (cplx c : d2.fields->velocity(0).coeffs) measure += c.real();
        measure *= plane.lattice_measure();
        CHECK(measure == Approx(4.0).epsilon(1e-12));
        const double n2 = sobolev_norm(d2.fields->velocity(0), 0.0);
        CHECK(n2 >= 0.5);
        CHECK(n2 <= 2.0);
        CHECK(n2 == Approx(2.0).epsilon(0.1));
        CHECK(d2.fields->velocity(0).coeffs == d2.fields->velocity(1).coeffs);
    }

    SUBCASE("grid too small") {
        const FrequencyGrid small = FrequencyGrid::line(8.0 * std::numbers::pi, 2048);  // Nyquist 128
        CHECK_THROWS_AS((void)build_data(IllposedRegime::Gen1D, 64.0, 0.0, small), GridError);
        const FrequencyGrid flat = FrequencyGrid::plane(8.0 * std::numbers::pi, 4096, 32);  // second Nyquist 2
        CHECK_THROWS_AS((void)build_data(IllposedRegime::Gen2D, 64.0, 0.0, flat), GridError);
    }
}

TEST_CASE("kernel at time zero reduces to the kinetic convolution") {
    const LocalizedData data = build_data(IllposedRegime::Gen1D, 128.0, -1.0);
    const double xi = 0.3;
    const auto q = q_kernel(data, {xi, 0.0}, 0.0, 0.0);
    const double overlap = 2.0 * (1.0 - xi);
    const cplx expected = cplx{0.0, -xi} / (2.0 * (1.0 + data.params.d() * xi * xi)) * data.amplitude *
                          data.amplitude * overlap / kTwoPi;
    CHECK(rel(q[1], expected) < 1e-13);
    CHECK(std::abs(q[0]) < 1e-12 * std::abs(expected));  // eta_1 = 0 at s = 0
    CHECK(std::abs(q2_kernel(data, {0.0, 0.0}, 0.0, 0.0)) == 0.0);
    const double t = time_scale(data.regime, data.N);
    CHECK(std::abs(q2_kernel(data, {0.0, 0.0}, t / 3, t)) == 0.0);
}

TEST_CASE("1D kernel against the midpoint oracle") {
    for (IllposedRegime regime : {IllposedRegime::Gen1D, IllposedRegime::KdV1D}) {
        for (double N : {128.0, 512.0}) {
            const LocalizedData data = build_data(regime, N, -1.0);
            const double t = time_scale(regime, N);
            for (double xi : {-0.9, -0.25, 0.5, 0.75}) {
                for (double frac : {0.0, 0.3, 1.0}) {
                    CAPTURE(xi);
                    CAPTURE(frac);
                    const cplx ours = q2_kernel(data, {xi, 0.0}, frac * t, t);
                    CHECK(rel(ours, oracle_in_library_units(data, xi, frac * t, t)) < 1e-9);
                }
            }
        }
    }
    SUBCASE("frozen value at N = 128, s = -1, xi = 1/2, s = t/2") {
        const LocalizedData data = build_data(IllposedRegime::Gen1D, 128.0, -1.0);
        const double t = 1.0 / 12800.0;
        const cplx ours = q2_kernel(data, {0.5, 0.0}, t / 2, t);
        CHECK(std::abs(ours.real()) < 1e-10);
        CHECK(ours.imag() == Approx(-579.40752389699708).epsilon(1e-10));
        const cplx reference = oracle::richardson(128.0, 128.0, 0.5, t / 2, t, {-1.0, 1.0, -2.0, 0.5});
        CHECK(reference.imag() == Approx(3640.524841018916).epsilon(1e-10));
    }
}

TEST_CASE("adaptive kernel agrees with a high fixed order") {
    const LocalizedData data = build_data(IllposedRegime::Gen2D, 256.0, -1.0);
    const double t = time_scale(data.regime, data.N);
    const Vec2 xi{0.4, -1.3};
    const auto adaptive = q_kernel(data, xi, 0.6 * t, t);
    const auto fine = q_kernel_fixed(data, xi, 0.6 * t, t, 64);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(adaptive[c] - fine[c]) <= 1e-6 * std::abs(fine[1]));
}

TEST_CASE("third component is the second with xi_1 swapped for xi_2") {
    for (IllposedRegime regime : {IllposedRegime::Gen2D, IllposedRegime::KdV2D, IllposedRegime::BBM2D}) {
        const LocalizedData data = build_data(regime, 128.0, -1.0);
        const double t = time_scale(regime, 128.0);
        for (const Vec2& xi : {Vec2{0.3, 1.1}, Vec2{-0.7, -0.2}, Vec2{0.9, 1.9}}) {
            const auto q = q_kernel(data, xi, 0.4 * t, t);
            CHECK(std::abs(q[2] * xi[0] - q[1] * xi[1]) <= 1e-12 * std::abs(q[1]));
        }
    }
}

TEST_CASE("low-frequency norm ratios between N and 2N") {
    auto ratio = [](IllposedRegime r, double s) {
        const double n1 = a2_lowfreq_norm(build_data(r, 128.0, s), 0.0).value;
        const double n2 = a2_lowfreq_norm(build_data(r, 256.0, s), 0.0).value;
        return n2 / n1;
    };
    CHECK(ratio(IllposedRegime::Gen1D, -1.0) == Approx(2.0).epsilon(0.15));
    CHECK(ratio(IllposedRegime::KdV1D, -1.5) == Approx(1.0).epsilon(0.15));
    CHECK(ratio(IllposedRegime::BBM2D, 0.0) == Approx(1.0).epsilon(0.15));
}

TEST_CASE("quadrature refinement barely moves the norm") {
    for (IllposedRegime r : {IllposedRegime::Gen1D, IllposedRegime::KdV1D, IllposedRegime::Gen2D}) {
        CAPTURE(to_string(r));
        const LocalizedData data = build_data(r, 256.0, -1.0);
        const LowFrequencyNorm base = a2_lowfreq_norm(data, 0.0);
        CHECK(base.certificate < 1e-4);
        const QuadratureOrders finer = dimension_of(r) == 1 ? QuadratureOrders{16, 16, 32} : QuadratureOrders{12, 12, 24};
        const LowFrequencyNorm refined = a2_lowfreq_norm(data, 0.0, time_scale(r, 256.0), finer);
        CHECK(std::abs(refined.value - base.value) < 1e-4 * refined.value);
    }
}

TEST_CASE("inflation sweeps") {
    const std::vector<double> Ns{128, 256, 512, 1024};
    SUBCASE("inflation below the threshold, decay above") {
        const InflationReport up = inflation_sweep(IllposedRegime::Gen1D, -1.0, 0.0, Ns);
        CHECK(up.pass);
        CHECK(up.slope == Approx(1.0).epsilon(0.15));
        const InflationReport down = inflation_sweep(IllposedRegime::Gen1D, 0.0, 0.0, Ns);
        CHECK(down.slope == Approx(-1.0).epsilon(0.15));
        for (IllposedRegime r : {IllposedRegime::Gen1D, IllposedRegime::KdV1D}) {
            const double sc = critical_regularity(r);
            CHECK(inflation_sweep(r, sc - 0.5, 0.0, Ns).slope > 0.0);
            CHECK(inflation_sweep(r, sc + 0.5, 0.0, Ns).slope < 0.0);
        }
    }
    SUBCASE("slope does not depend on the output regularity") {
        const double reference = inflation_sweep(IllposedRegime::KdV1D, -2.0, 0.0, Ns).slope;
        for (double sprime : {-1.0, 1.0}) {
            CHECK(inflation_sweep(IllposedRegime::KdV1D, -2.0, sprime, Ns).slope == Approx(reference).epsilon(0.02));
        }
    }
    SUBCASE("BBM at s = -1/4") {
        const InflationReport r = inflation_sweep(IllposedRegime::BBM2D, -0.25, 0.0, std::vector<double>{128, 256, 512});
        CHECK(r.slope == Approx(0.5).epsilon(0.15));
    }
    SUBCASE("too few points") {
        CHECK_THROWS_AS((void)inflation_sweep(IllposedRegime::Gen1D, -1.0, 0.0, std::vector<double>{128, 256}),
                        ConfigError);
    }
    SUBCASE("log-log fit recovers an exact power") {
        const std::vector<double> x{1, 2, 4, 8};
        const std::vector<double> y{3, 3 * std::pow(2.0, 1.7), 3 * std::pow(4.0, 1.7), 3 * std::pow(8.0, 1.7)};
        CHECK(loglog_slope(x, y) == Approx(1.7).epsilon(1e-12));
    }
}

TEST_CASE("interaction lemma") {
    SUBCASE("s = t = 0 gives one half") {
        const AbcdParams gen = default_params(IllposedRegime::Gen1D);
        CHECK(lemma_lhs(IllposedRegime::Gen1D, gen, {0.7, 0.0}, {1000.2, 0.0}, 0.0, 0.0) == Approx(0.5));
        const Vec2 xi{0.5, 0.5};
        const Vec2 kappa{1000.0, 0.3};
        const double opening = lemma_bound(IllposedRegime::Gen2D, xi, kappa) * 16.0 + 0.5;
        CHECK(lemma_lhs(IllposedRegime::Gen2D, gen, xi, kappa, 0.0, 0.0) == Approx(0.5 * opening));
        CHECK(lemma_bound(IllposedRegime::KdV1D, xi, kappa) == Approx(1.0 / 32.0));
    }
    SUBCASE("no violations at N = 1e5") {
        for (IllposedRegime r : kAllIllposedRegimes) {
            CAPTURE(to_string(r));
            const LemmaReport report = lemma_lower_bound_check(r, 1e5, 10000, 7);
            CHECK(report.samples == 10000);
            CHECK(report.violations == 0);
            CHECK(report.min_margin > 0.0);
            CHECK_FALSE(report.witness.has_value());
        }
    }
    SUBCASE("2D generic opening angle near one keeps 1/64") {
        const AbcdParams p = default_params(IllposedRegime::Gen2D);
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double N = 1e5;
        const double T = time_scale(IllposedRegime::Gen2D, N);
        for (int n = 0; n < 2000; ++n) {
            const double angle = kTwoPi * unit(rng);
            const double radius = 0.5 + 0.5 * unit(rng);
            const Vec2 xi{radius * std::cos(angle), radius * std::sin(angle)};
            const Vec2 kappa{N - 0.5 + std::max(0.0, xi[0]) + unit(rng) * (1.0 - std::abs(xi[0])),
                             std::max(-1.0, xi[1] - 1.0) + unit(rng) * (2.0 - std::abs(xi[1]))};
            const double t = T * unit(rng);
            const double s = t * unit(rng);
            if (lemma_bound(IllposedRegime::Gen2D, xi, kappa) < 1.0 / 64.0) continue;
            CHECK(lemma_lhs(IllposedRegime::Gen2D, p, xi, kappa, s, t) >= 1.0 / 64.0);
        }
    }
    SUBCASE("seeded runs repeat") {
        const LemmaReport a = lemma_lower_bound_check(IllposedRegime::Gen2D, 1e5, 5000, 11);
        const LemmaReport b = lemma_lower_bound_check(IllposedRegime::Gen2D, 1e5, 5000, 11);
        CHECK(a.min_lhs == b.min_lhs);
        CHECK(a.min_margin == b.min_margin);
    }
}

TEST_CASE("rectangle geometry") {
    SUBCASE("antipodal configuration") {
        const double N = 50.0;
        const Vec2 kappa{N, 0.0};
        const Vec2 xi{0.0, 0.0};
        CHECK(cos_beta(xi, kappa) == Approx(-1.0));
        CHECK(-kernel_p(xi, kappa) == Approx(1.0));
    }
    SUBCASE("corners at N = 17") {
        const GeometryReport r = geometry_check_2d(17.0, 0, 1, 9);
        CHECK(r.pass());
        CHECK(r.samples == 2 * 9 * 9 * 9 * 9);
        CHECK(r.max_cos_beta <= -0.75);
        CHECK(r.min_minus_p >= 0.75);
    }
    SUBCASE("random draws at N = 1000") {
        const GeometryReport r = geometry_check_2d(1000.0, 10000, 5);
        CHECK(r.pass());
        CHECK(r.min_minus_p > 0.99);
    }
}

TEST_CASE("pseudo-spectral second iterate") {
    std::mt19937_64 rng(21);
    const AbcdParams gen = default_params(IllposedRegime::Gen1D);
    const FrequencyGrid line = FrequencyGrid::line(8.0, 256);

    SUBCASE("zero data") {
        const StateVector zero = StateVector::zeros(line);
        CHECK(state_norm(picard_a2(zero, 0.1, gen)) == 0.0);
    }
    SUBCASE("quadratic scaling and symmetric polarisation") {
        const StateVector v = random_band_state(line, 10.0, rng);
        const StateVector w = random_band_state(line, 10.0, rng);
        const StateVector a = picard_a2(v, 0.2, gen);
        CHECK(relative_gap(picard_a2(2.0 * v, 0.2, gen), 4.0 * a) < 1e-12);
        const StateVector vw = picard_bilinear(v, w, 0.2, gen);
        CHECK(relative_gap(picard_bilinear(w, v, 0.2, gen), vw) < 1e-12);
        const StateVector sum = picard_a2(v + w, 0.2, gen);
        const StateVector expanded = a + picard_a2(w, 0.2, gen) + 2.0 * vw;
        CHECK(relative_gap(sum, expanded) < 1e-12);
    }
    SUBCASE("aliasing guard") {
        const StateVector wide = random_band_state(line, 1e9, rng);
        CHECK_THROWS_AS((void)picard_a2(wide, 0.1, gen), AliasingError);
    }
    SUBCASE("missing fields") {
        CHECK_THROWS_AS((void)picard_a2(build_data(IllposedRegime::Gen1D, 128.0, -1.0), 0.1), ConfigError);
    }
}

TEST_CASE("grid iterate against the continuum norm in 1D") {
    const double N = 128.0;
    const FrequencyGrid grid = FrequencyGrid::line(64.0 * std::numbers::pi, 65536);  // spacing 1/64
    const LocalizedData data = build_data(IllposedRegime::Gen1D, N, -1.0, grid);
    const double t = time_scale(data.regime, N);
    const StateVector a2 = picard_a2(data, t);
    CHECK(support_fraction(a2, data) >= 1.0 - 1e-12);
    const double lattice = lowfreq_lattice_norm(a2, 0.0);
    const double continuum = a2_lowfreq_norm(data, 0.0).value;
    CHECK(std::abs(lattice - continuum) < 1e-3 * continuum);
}

TEST_CASE("grid iterate against the continuum norm in 2D") {
    for (IllposedRegime regime : {IllposedRegime::Gen2D, IllposedRegime::BBM2D}) {
        CAPTURE(to_string(regime));
        const double N = 64.0;
        const FrequencyGrid grid = FrequencyGrid::plane(16.0 * std::numbers::pi, 8192, 128);  // spacing 1/16
        const LocalizedData data = build_data(regime, N, -1.0, grid);
        const double t = time_scale(regime, N);
        // Phases over [0, t] are tiny, so a short time rule is exact to roundoff here.
        const StateVector a2 = picard_a2(data, t, 4);
        CHECK(support_fraction(a2, data) >= 1.0 - 1e-12);
        const double lattice = lowfreq_lattice_norm(a2, 0.0);
        const double continuum = a2_lowfreq_norm(data, 0.0).value;
        CHECK(std::abs(lattice - continuum) < 1e-3 * continuum);
    }
}

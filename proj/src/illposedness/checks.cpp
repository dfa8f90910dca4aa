#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "boussinesq/errors.hpp"
#include "boussinesq/illposedness.hpp"
#include "boussinesq/parallel.hpp"

namespace bq {
namespace {

double modulus(const Vec2& v) noexcept { return std::hypot(v[0], v[1]); }
double dot(const Vec2& x, const Vec2& y) noexcept { return x[0] * y[0] + x[1] * y[1]; }
Vec2 minus(const Vec2& x, const Vec2& y) noexcept { return {x[0] - y[0], x[1] - y[1]}; }

// Phase accumulated by the linear flow at frequency y over time tau.
double phase(const Vec2& y, double tau, const AbcdParams& p) {
    const double r = modulus(y);
    return r * eval_dispersion(r, p) * tau;
}

constexpr long kChunk = 4096;

struct ChunkResult {
    long samples = 0;
    double min_lhs = std::numeric_limits<double>::infinity();
    double bound_at_min = 0.0;
    double min_margin = std::numeric_limits<double>::infinity();
    long violations = 0;
    std::optional<LemmaWitness> witness;
};

}  // namespace

double lemma_lhs(IllposedRegime regime, const AbcdParams& p, const Vec2& xi, const Vec2& kappa, double s_time,
                 double t, bool elapsed) {
    const Vec2 rest = minus(xi, kappa);
    if (dimension_of(regime) == 1) {
        const double x = xi[0];
        const double k = kappa[0];
        const double ratio = (1.0 + p.d() * x * x) / (1.0 + p.b() * x * x);
        const double weight = eval_h(k, p) / eval_h(x, p);
        const double theta_out = x * eval_dispersion(std::abs(x), p) * (t - s_time);
        const double theta_in = k * eval_dispersion(std::abs(k), p) * s_time;
        const double theta_rest = rest[0] * eval_dispersion(std::abs(rest[0]), p) * s_time;
        const double cross = -ratio * weight * std::sin(theta_out) * std::sin(theta_in) * std::cos(theta_rest);
        const double direct = 0.5 * std::cos(theta_out) * std::cos(theta_in) * std::cos(theta_rest);
        return cross + direct;
    }
    const double r = modulus(xi);
    const double r_rest = modulus(rest);
    const double r_kappa = modulus(kappa);
    const double ratio = (1.0 + p.d() * r * r) / (1.0 + p.b() * r * r);
    const double alignment = dot(xi, kappa) / (r * r_kappa);
    const double weight = eval_varsigma(r_rest, p) / eval_varsigma(r, p);
    const double opening = dot(minus(kappa, xi), kappa) / (r_rest * r_kappa);
    const double tau = elapsed ? t - s_time : t;
    const double out = phase(xi, tau, p);
    const double in_rest = phase(rest, s_time, p);
    const double in_kappa = phase(kappa, s_time, p);
    const double cross = ratio * alignment * weight * std::sin(out) * std::sin(in_rest) * std::cos(in_kappa);
    const double direct = opening * 0.5 * std::cos(out) * std::cos(in_rest) * std::cos(in_kappa);
    return cross + direct;
}

double lemma_bound(IllposedRegime regime, const Vec2& xi, const Vec2& kappa) {
    if (dimension_of(regime) == 1) return 1.0 / 32.0;
    const Vec2 rest = minus(xi, kappa);
    const double opening = dot(minus(kappa, xi), kappa) / (modulus(rest) * modulus(kappa));
    return (opening - 0.5) / 16.0;
}

LemmaReport lemma_lower_bound_check(IllposedRegime regime, double N, long samples, std::uint64_t seed,
                                    std::optional<AbcdParams> params) {
    if (samples <= 0) throw ConfigError("lemma check needs a positive sample count");
    const LocalizedData data = build_data(regime, N, 0.0, params);
    const AbcdParams& p = data.params;
    const int dim = data.dimension();
    const double horizon = time_scale(regime, N);

    const auto chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
    std::vector<ChunkResult> results(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(c)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        ChunkResult& out = results[c];
        const long count = std::min<long>(kChunk, samples - static_cast<long>(c) * kChunk);
        for (long n = 0; n < count; ++n) {
            Vec2 xi{0.0, 0.0};
            if (dim == 1) {
                xi[0] = (0.5 + 0.5 * unit(rng)) * (unit(rng) < 0.5 ? -1.0 : 1.0);
            } else {
                const double radius = std::sqrt(0.25 + 0.75 * unit(rng));
                const double angle = 2.0 * std::numbers::pi * unit(rng);
                xi = {radius * std::cos(angle), radius * std::sin(angle)};
            }
            const std::size_t side = unit(rng) < 0.5 ? 0 : 1;
            const Box& first = data.support[side];
            const Box& second = data.support[1 - side];
            Vec2 kappa{0.0, 0.0};
            for (int axis = 0; axis < dim; ++axis) {
                const double lo = std::max(first.lo[axis], xi[axis] - second.hi[axis]);
                const double hi = std::min(first.hi[axis], xi[axis] - second.lo[axis]);
                kappa[axis] = lo + (hi - lo) * unit(rng);
            }
            const double u1 = horizon * unit(rng);
            const double u2 = horizon * unit(rng);
            const double t = std::max(u1, u2);
            const double s_time = std::min(u1, u2);
            const double bound = lemma_bound(regime, xi, kappa);

            for (bool elapsed : dim == 1 ? std::vector<bool>{true} : std::vector<bool>{true, false}) {
                const double lhs = lemma_lhs(regime, p, xi, kappa, s_time, t, elapsed);
                if (lhs < out.min_lhs) {
                    out.min_lhs = lhs;
                    out.bound_at_min = bound;
                }
                out.min_margin = std::min(out.min_margin, lhs - bound);
                if (lhs < bound) {
                    ++out.violations;
                    if (!out.witness) out.witness = LemmaWitness{xi, kappa, s_time, t, lhs, bound};
                }
            }
            ++out.samples;
        }
    });

    LemmaReport report{regime, N, 0, std::numeric_limits<double>::infinity(), 0.0,
                       std::numeric_limits<double>::infinity(), 0, std::nullopt};
    for (const ChunkResult& r : results) {
        report.samples += r.samples;
        if (r.min_lhs < report.min_lhs) {
            report.min_lhs = r.min_lhs;
            report.bound_at_min = r.bound_at_min;
        }
        report.min_margin = std::min(report.min_margin, r.min_margin);
        report.violations += r.violations;
        if (!report.witness && r.witness) report.witness = r.witness;
    }
    return report;
}

double kernel_p(const Vec2& xi, const Vec2& kappa) noexcept {
    const Vec2 rest = minus(xi, kappa);
    return ((rest[0] + rest[1]) / modulus(rest)) * ((kappa[0] + kappa[1]) / modulus(kappa));
}

double cos_beta(const Vec2& xi, const Vec2& kappa) noexcept {
    const Vec2 rest = minus(xi, kappa);
    return dot(rest, kappa) / (modulus(rest) * modulus(kappa));
}

GeometryReport geometry_check_2d(double N, long random_samples, std::uint64_t seed, int lattice) {
    if (lattice < 2) throw ConfigError("geometry lattice needs at least two points per axis");
    if (random_samples < 0) throw ConfigError("random sample count must be non-negative");
    if (!(N > 0.0)) throw ConfigError("geometry check needs N > 0");
    const std::array<Box, 2> rectangles{Box{{N - 0.5, -1.0}, {N + 0.5, 1.0}}, Box{{-N - 0.5, -1.0}, {-N + 0.5, 1.0}}};
    GeometryReport report{N, 0, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                          0, std::nullopt};

    auto check = [&](const Vec2& kappa, const Vec2& rest) {
        const Vec2 xi{kappa[0] + rest[0], kappa[1] + rest[1]};
        const double cb = cos_beta(xi, kappa);
        const double minus_p = -kernel_p(xi, kappa);
        report.max_cos_beta = std::max(report.max_cos_beta, cb);
        report.min_minus_p = std::min(report.min_minus_p, minus_p);
        ++report.samples;
        if (cb > -0.75 || minus_p < 0.75) {
            ++report.violations;
            if (!report.witness) report.witness = std::array<Vec2, 2>{xi, kappa};
        }
    };
    auto lattice_point = [&](const Box& box, int i, int j) {
        const double f0 = static_cast<double>(i) / (lattice - 1);
        const double f1 = static_cast<double>(j) / (lattice - 1);
        return Vec2{box.lo[0] + f0 * (box.hi[0] - box.lo[0]), box.lo[1] + f1 * (box.hi[1] - box.lo[1])};
    };

    for (std::size_t side = 0; side < 2; ++side) {
        const Box& home = rectangles[side];
        const Box& away = rectangles[1 - side];
        for (int i = 0; i < lattice; ++i)
            for (int j = 0; j < lattice; ++j)
                for (int k = 0; k < lattice; ++k)
                    for (int l = 0; l < lattice; ++l) check(lattice_point(home, i, j), lattice_point(away, k, l));
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](const Box& box) {
        return Vec2{box.lo[0] + (box.hi[0] - box.lo[0]) * unit(rng), box.lo[1] + (box.hi[1] - box.lo[1]) * unit(rng)};
    };
    for (long n = 0; n < random_samples; ++n) {
        const std::size_t side = unit(rng) < 0.5 ? 0 : 1;
        const Vec2 kappa = draw(rectangles[side]);
        check(kappa, draw(rectangles[1 - side]));
    }
    return report;
}

}  // namespace bq

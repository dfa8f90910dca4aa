#include "boussinesq/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <span>

#include "boussinesq/errors.hpp"
#include "boussinesq/illposedness.hpp"

namespace bq {
namespace {

// Physical L2 norm from spectral coefficients (Parseval).
double physical_norm(const SpectralField& f, double s = 0.0) {
    return sobolev_norm(f, s) / std::pow(2.0 * std::numbers::pi, 0.5 * f.grid.dimension());
}

}  // namespace

double low_block_product_check(const SpectralField& f, const SpectralField& g) {
    const double nf = physical_norm(f);
    const double ng = physical_norm(g);
    if (nf == 0.0 || ng == 0.0) return 0.0;
    const SpectralField low = lp_project(exact_product(f, g), 1.0);
    return physical_norm(low) / (nf * ng);
}

double low_block_constant(const FrequencyGrid& grid) {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = lp_weight(grid.modulus(i), 1.0);
        acc += w * w;
    }
    return std::sqrt(acc * grid.lattice_measure()) / std::pow(2.0 * std::numbers::pi, 0.5 * grid.dimension());
}

std::string_view to_string(SchurCase kind) noexcept {
    return kind == SchurCase::HighLow ? "I" : "II";
}

SchurResult schur_sum(const SchurConfig& config, SchurCase kind) {
    if (config.dimension != 1 && config.dimension != 2) throw ConfigError("Schur sums need dimension 1 or 2");
    if (!is_dyadic(config.max_block) || config.max_block < 1024.0) {
        throw ConfigError("Schur sums need a dyadic max_block of at least 2^10");
    }
    const double n = config.dimension;
    const double s = config.s;

    SchurResult out{kind, config, {}, {}, {}, 0.0, 0.0, false, 0.0};
    double sup = 0.0;
    for (double outer = 2.0; outer <= config.max_block; outer *= 2.0) {
        double total = 0.0;
        for (double neighbour : {outer / 2.0, outer, 2.0 * outer}) {
            if (kind == SchurCase::HighLow) {
                // outer = N, neighbour = N2, inner = N1
                for (double inner = 1.0; inner <= 4.0 * neighbour; inner *= 2.0) {
                    total += std::pow(outer, -2.0 + 2.0 * s) * std::pow(neighbour, -2.0 * s) *
                             std::pow(inner, n - 2.0 * s);
                }
            } else {
                // outer = N2, neighbour = N1, inner = N
                for (double inner = 2.0; inner <= 4.0 * neighbour; inner *= 2.0) {
                    total += std::pow(outer, -2.0 * s) * std::pow(neighbour, -2.0 * s) *
                             std::pow(inner, n - 2.0 + 2.0 * s);
                }
            }
        }
        sup = std::max(sup, total);
        out.outer.push_back(outer);
        out.partial.push_back(total);
        out.running_sup.push_back(sup);
    }

    const std::size_t count = out.outer.size();
    out.sup = sup;
    out.relative_change = (out.running_sup[count - 1] - out.running_sup[count - 3]) / out.running_sup[count - 1];
    out.bounded = out.relative_change < kSchurStabilityTolerance;
    const std::size_t half = count / 2;
    out.growth_exponent = loglog_slope(std::span(out.outer).subspan(half), std::span(out.partial).subspan(half));
    return out;
}

double bilinear_ratio(const SpectralField& f, const SpectralField& g, double s) {
    const double nf = physical_norm(f, s);
    const double ng = physical_norm(g, s);
    if (nf == 0.0 || ng == 0.0) return 0.0;
    const SpectralField product = exact_product(f, g);
    const double numerator = weighted_norm(product, [s](const Vec2& xi) {
        const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
        return std::pow(1.0 + r2, 0.5 * (s - 1.0)) * std::sqrt(r2);
    });
    return numerator / std::pow(2.0 * std::numbers::pi, 0.5 * f.grid.dimension()) / (nf * ng);
}

ProbeReport bilinear_ratio_probe(const FrequencyGrid& grid, double s, int trials, std::uint64_t seed) {
    const int n = grid.dimension();
    if (s < 0.5 * (n - 2)) throw ConfigError("the bilinear estimate is only expected for s >= (n - 2)/2");
    if (trials < 1) throw ConfigError("probe needs at least one trial");
    // Blocks N are supported in |xi| <= 2N, so N <= Nyquist / 8 keeps inputs below Nyquist / 4.
    const double top = std::exp2(std::floor(std::log2(grid.nyquist() / 8.0)));
    if (top < 1.0) throw GridError("grid too coarse for the bilinear probe");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_amplitude(-6.0, 0.0);
    auto draw = [&]() {
        const SpectralField base = random_field(grid, 2.0 * top, rng, true);
        SpectralField out = SpectralField::zeros(grid);
        for (double block = 1.0; block <= top; block *= 2.0) {
            out.axpy(std::exp(log_amplitude(rng)), lp_project(base, block));
        }
        return out;
    };

    ProbeReport report{trials, 0.0, 0.0};
    for (int trial = 0; trial < trials; ++trial) {
        const SpectralField f = draw();
        const SpectralField g = draw();
        const double ratio = bilinear_ratio(f, g, s);
        report.max_ratio = std::max(report.max_ratio, ratio);
        report.mean_ratio += ratio / trials;
    }
    return report;
}

}  // namespace bq

#include "boussinesq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "boussinesq/propagators.hpp"

namespace bq {
namespace {

double max_coefficient(const std::vector<SpectralField>& fields) {
    double m = 0.0;
    for (const SpectralField& f : fields)
        for (const cplx& z : f.coeffs) m = std::max(m, std::abs(z));
    return m;
}

double max_difference(const std::vector<SpectralField>& a, const std::vector<SpectralField>& b) {
    double m = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c)
        for (std::size_t i = 0; i < a[c].coeffs.size(); ++i)
            m = std::max(m, std::abs(a[c].coeffs[i] - b[c].coeffs[i]));
    return m;
}

double max_modulus_difference(const DiagonalState& a, const DiagonalState& b) {
    double m = 0.0;
    for (std::size_t c = 0; c < a.components.size(); ++c)
        for (std::size_t i = 0; i < a.components[c].coeffs.size(); ++i)
            m = std::max(m, std::abs(std::abs(a.components[c].coeffs[i]) - std::abs(b.components[c].coeffs[i])));
    return m;
}

StateVector random_state(const FrequencyGrid& grid, std::mt19937_64& rng) {
    StateVector v = StateVector::zeros(grid);
    for (SpectralField& c : v.components) c = random_field(grid, grid.nyquist() + 1.0, rng, true);
    return v;
}

}  // namespace

CheckResult diagonalization_check(long samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> negative(-3.0, -0.1), positive(0.1, 3.0), component(-50.0, 50.0);
    double worst = 0.0;
    for (long k = 0; k < samples; ++k) {
        const double a = negative(rng), b = positive(rng), c = negative(rng), d = positive(rng);
        const AbcdParams p(a, b, c, d, Regime::Generic);
        Vec2 xi{component(rng), component(rng)};
        if (xi[0] == 0.0 && xi[1] == 0.0) xi[0] = 1.0;
        const Diagonalization dg = diagonalize_2d(xi, p);
        const Matrix3 identity = multiply(dg.P, dg.Pinv);
        const Matrix3 diagonal = multiply(dg.Pinv, multiply(linear_operator_matrix(xi, p), dg.P));
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double kron = i == j ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(identity[i][j] - kron));
                worst = std::max(worst, std::abs(diagonal[i][j] - kron * dg.eigenvalues[i]));
            }
        }
    }
    return {"diagonalization", "random-generic", 2, samples, worst, kLinearCheckTolerance};
}

std::vector<CheckResult> semigroup_checks(int trials, std::uint64_t seed) {
    const std::vector<std::pair<std::string, AbcdParams>> families{
        {"generic", AbcdParams(-1.0, 1.0, -2.0, 0.5, Regime::Generic)},
        {"kdv-kdv", AbcdParams::kdv_kdv()},
        {"bbm-bbm", AbcdParams::bbm_bbm()},
        {"symmetric-ab", AbcdParams(0.4, 0.3, 0.4, 0.3, Regime::GenericAB)},
    };
    const FrequencyGrid line = FrequencyGrid::line(4.0 * std::numbers::pi, 64);
    const FrequencyGrid plane = FrequencyGrid::plane(4.0 * std::numbers::pi, 32, 32);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> time(-1.0, 1.0);
    std::vector<CheckResult> out;
    for (const auto& [name, p] : families) {
        for (const FrequencyGrid* grid : {&line, &plane}) {
            double identity = 0.0, composition = 0.0, inverse = 0.0, modulus = 0.0;
            for (int k = 0; k < trials; ++k) {
                const StateVector v = random_state(*grid, rng);
                const double scale = max_coefficient(v.components);
                const double t1 = time(rng), t2 = time(rng);
                identity = std::max(identity, max_difference(apply_linear(v, 0.0, p).components, v.components) / scale);
                const StateVector once = apply_linear(v, t1, p);
                composition = std::max(composition, max_difference(apply_linear(apply_linear(v, t2, p), t1, p).components,
                                                                   apply_linear(v, t1 + t2, p).components) /
                                                        scale);
                inverse = std::max(inverse, max_difference(apply_linear(once, -t1, p).components, v.components) / scale);
                const DiagonalState diag = to_diagonal(v, p);
                modulus = std::max(modulus, max_modulus_difference(advance_diagonal(diag, t1, p), diag) /
                                                max_coefficient(diag.components));
            }
            const int dim = grid->dimension();
            out.push_back({"identity", name, dim, trials, identity, kLinearCheckTolerance});
            out.push_back({"composition", name, dim, trials, composition, kLinearCheckTolerance});
            out.push_back({"inverse", name, dim, trials, inverse, kLinearCheckTolerance});
            out.push_back({"modulus", name, dim, trials, modulus, kLinearCheckTolerance});
        }
    }
    return out;
}

}  // namespace bq

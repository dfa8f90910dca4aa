#include <cmath>
#include <sstream>

#include "boussinesq/errors.hpp"
#include "boussinesq/illposedness.hpp"

namespace bq {

std::string_view to_string(IllposedRegime regime) noexcept {
    switch (regime) {
        case IllposedRegime::Gen1D: return "gen1d";
        case IllposedRegime::KdV1D: return "kdv1d";
        case IllposedRegime::Gen2D: return "gen2d";
        case IllposedRegime::KdV2D: return "kdv2d";
        case IllposedRegime::BBM2D: return "bbm2d";
    }
    return "unknown";
}

std::optional<IllposedRegime> parse_illposed_regime(std::string_view name) noexcept {
    for (IllposedRegime r : kAllIllposedRegimes) {
        if (to_string(r) == name) return r;
    }
    return std::nullopt;
}

int dimension_of(IllposedRegime regime) noexcept {
    return regime == IllposedRegime::Gen1D || regime == IllposedRegime::KdV1D ? 1 : 2;
}

double time_scale(IllposedRegime regime, double N) noexcept {
    switch (regime) {
        case IllposedRegime::Gen1D:
        case IllposedRegime::Gen2D: return 1.0 / (100.0 * N);
        case IllposedRegime::KdV1D:
        case IllposedRegime::KdV2D: return 1.0 / (100.0 * N * N * N);
        case IllposedRegime::BBM2D: return 1.0 / 1000.0;
    }
    return 0.0;
}

double predicted_exponent(IllposedRegime regime, double s) noexcept {
    return -2.0 * s + 2.0 * critical_regularity(regime);
}

double critical_regularity(IllposedRegime regime) noexcept {
    switch (regime) {
        case IllposedRegime::Gen1D:
        case IllposedRegime::Gen2D: return -0.5;
        case IllposedRegime::KdV1D:
        case IllposedRegime::KdV2D: return -1.5;
        case IllposedRegime::BBM2D: return 0.0;
    }
    return 0.0;
}

AbcdParams default_params(IllposedRegime regime) {
    switch (regime) {
        case IllposedRegime::Gen1D:
        case IllposedRegime::Gen2D: return AbcdParams(-1.0, 1.0, -2.0, 0.5, Regime::Generic);
        case IllposedRegime::KdV1D:
        case IllposedRegime::KdV2D: return AbcdParams::kdv_kdv();
        case IllposedRegime::BBM2D: return AbcdParams::bbm_bbm();
    }
    throw RegimeError("unknown ill-posedness regime");
}

void require_family(IllposedRegime regime, const AbcdParams& p) {
    const Regime expected = default_params(regime).regime();
    if (p.regime() != expected) {
        throw RegimeError(std::string(to_string(regime)) + " needs " + std::string(to_string(expected)) +
                          " coefficients, got " + std::string(to_string(p.regime())));
    }
}

double LocalizedData::indicator(const Vec2& xi, double tolerance) const noexcept {
    const int dim = dimension();
    double total = 0.0;
    for (const Box& box : support) {
        double w = 1.0;
        for (int axis = 0; axis < dim && w > 0.0; ++axis) {
            const double x = xi[axis];
            if (std::abs(x - box.lo[axis]) <= tolerance || std::abs(x - box.hi[axis]) <= tolerance) {
                w *= 0.5;
            } else if (x < box.lo[axis] || x > box.hi[axis]) {
                w = 0.0;
            }
        }
        total += w;
    }
    return total;
}

LocalizedData build_data(IllposedRegime regime, double N, double s, std::optional<AbcdParams> params) {
    if (!(N >= 64.0)) {
        std::ostringstream os;
        os << "localised data need N >= 64, got " << N;
        throw ConfigError(os.str());
    }
    const AbcdParams p = params.value_or(default_params(regime));
    require_family(regime, p);
    std::vector<Box> support;
    if (dimension_of(regime) == 1) {
        support = {Box{{N - 0.5, 0.0}, {N + 0.5, 0.0}}, Box{{-N - 0.5, 0.0}, {-N + 0.5, 0.0}}};
    } else {
        support = {Box{{N - 0.5, -1.0}, {N + 0.5, 1.0}}, Box{{-N - 0.5, -1.0}, {-N + 0.5, 1.0}}};
    }
    return LocalizedData{regime, p, N, s, std::pow(N, -s), std::move(support), std::nullopt};
}

LocalizedData build_data(IllposedRegime regime, double N, double s, const FrequencyGrid& grid,
                         std::optional<AbcdParams> params) {
    LocalizedData data = build_data(regime, N, s, params);
    data.fields = materialize(data, grid);
    return data;
}

StateVector materialize(const LocalizedData& data, const FrequencyGrid& grid) {
    if (grid.dimension() != data.dimension()) throw GridError("grid dimension does not match the data");
    if (grid.nyquist(0) < 4.0 * data.N || (grid.dimension() == 2 && grid.nyquist(1) < 4.0)) {
        std::ostringstream os;
        os << "grid too small: Nyquist " << grid.nyquist(0) << " must be at least 4N = " << 4.0 * data.N;
        throw GridError(os.str());
    }
    StateVector state = StateVector::zeros(grid);
    const double tol = 1e-9 * grid.spacing();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = data.indicator(grid.frequency(i), tol);
        if (w == 0.0) continue;
        for (int axis = 0; axis < grid.dimension(); ++axis) state.velocity(axis).coeffs[i] = data.amplitude * w;
    }
    return state;
}

}  // namespace bq

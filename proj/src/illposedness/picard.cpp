#include <cmath>

#include "boussinesq/duhamel.hpp"
#include "boussinesq/errors.hpp"
#include "boussinesq/illposedness.hpp"

namespace bq {

StateVector picard_bilinear(const StateVector& v, const StateVector& w, double t, const AbcdParams& p,
                            int time_order) {
    return duhamel_bilinear(v, w, t, p, time_order);
}

StateVector picard_a2(const StateVector& initial, double t, const AbcdParams& p, int time_order) {
    return duhamel_bilinear(initial, initial, t, p, time_order);
}

StateVector picard_a2(const LocalizedData& data, double t, int time_order) {
    if (!data.fields) throw ConfigError("the data carry no grid fields; build them with a grid");
    return picard_a2(*data.fields, t, data.params, time_order);
}

namespace {

bool in_low_region(const Vec2& xi, int dim, double tol) {
    if (dim == 1) return std::abs(xi[0]) <= 1.0 + tol;
    return std::abs(xi[0]) <= 2.0 + tol && std::abs(xi[1]) <= 2.0 + tol;
}

bool in_high_region(const Vec2& xi, int dim, double N, double tol) {
    const double offset = std::abs(std::abs(xi[0]) - 2.0 * N);
    if (dim == 1) return offset <= 1.0 + tol;
    return offset <= 1.0 + tol && std::abs(xi[1]) <= 2.0 + tol;
}

}  // namespace

double support_fraction(const StateVector& a2, const LocalizedData& data) {
    const FrequencyGrid& grid = a2.grid();
    const int dim = grid.dimension();
    if (dim != data.dimension()) throw GridError("state and data dimensions differ");
    const double tol = 1e-9 * grid.spacing();
    double inside = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double mass = 0.0;
        for (const SpectralField& c : a2.components) mass += std::norm(c.coeffs[i]);
        total += mass;
        const Vec2 xi = grid.frequency(i);
        if (in_low_region(xi, dim, tol) || in_high_region(xi, dim, data.N, tol)) inside += mass;
    }
    return total > 0.0 ? inside / total : 1.0;
}

double lowfreq_lattice_norm(const StateVector& a2, double sprime) {
    const FrequencyGrid& grid = a2.grid();
    const int dim = grid.dimension();
    const double tol = 1e-9 * grid.spacing();
    const SpectralField& u = a2.velocity(0);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec2 xi = grid.frequency(i);
        if (!in_low_region(xi, dim, tol)) continue;
        const double bracket = 1.0 + xi[0] * xi[0] + xi[1] * xi[1];
        acc += std::pow(bracket, sprime) * std::norm(u.coeffs[i]);
    }
    return std::sqrt(acc * grid.lattice_measure());
}

}  // namespace bq

#include "boussinesq/duhamel.hpp"

#include <sstream>

#include "boussinesq/errors.hpp"
#include "boussinesq/quadrature.hpp"

namespace bq {
namespace {

constexpr cplx I{0.0, 1.0};

}  // namespace

void require_band_limited(const StateVector& v, double fraction) {
    for (const auto& c : v.components) {
        const double leak = dealias_leakage(c, fraction);
        if (leak > 1e-24) {
            std::ostringstream os;
            os << "input carries a fraction " << leak << " of its mass outside the retained band";
            throw AliasingError(os.str());
        }
    }
}

StateVector quadratic_term(const StateVector& v, const StateVector& w, const AbcdParams& p, double fraction) {
    const FrequencyGrid& g = v.grid();
    if (!(w.grid() == g) || v.components.size() != w.components.size()) {
        throw GridError("quadratic term needs states on one grid");
    }
    const int dim = g.dimension();
    StateVector out = StateVector::zeros(g);

    // Symmetrised products (eta_v u_w + eta_w u_v) / 2 per axis and (u_v . u_w) / 2.
    std::vector<SpectralField> flux;
    for (int axis = 0; axis < dim; ++axis) {
        SpectralField f = truncated_product(v.eta(), w.velocity(axis), fraction);
        f += truncated_product(w.eta(), v.velocity(axis), fraction);
        f *= 0.5;
        flux.push_back(std::move(f));
    }
    SpectralField kinetic = truncated_product(v.velocity(0), w.velocity(0), fraction);
    if (dim == 2) kinetic += truncated_product(v.velocity(1), w.velocity(1), fraction);
    kinetic *= 0.5;

    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec2 xi = g.frequency(i);
        const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
        cplx div = 0.0;
        for (int axis = 0; axis < dim; ++axis) div += xi[axis] * flux[axis].coeffs[i];
        out.eta().coeffs[i] = -I * div / (1.0 + p.b() * r2);
        const cplx grad = -I * kinetic.coeffs[i] / (1.0 + p.d() * r2);
        for (int axis = 0; axis < dim; ++axis) out.velocity(axis).coeffs[i] = xi[axis] * grad;
    }
    return out;
}

StateVector duhamel_bilinear(const StateVector& v0, const StateVector& w0, double t, const AbcdParams& p,
                             int time_order, double fraction) {
    require_band_limited(v0, fraction);
    require_band_limited(w0, fraction);
    StateVector total = StateVector::zeros(v0.grid());
    const auto& rule = GaussLegendre::of_order(time_order);
    rule.for_each_node(0.0, t, [&](double s, double weight) {
        const StateVector vs = apply_linear(v0, s, p);
        const StateVector forcing =
            &v0 == &w0 ? quadratic_term(vs, vs, p, fraction) : quadratic_term(vs, apply_linear(w0, s, p), p, fraction);
        total.axpy(weight, apply_linear(forcing, t - s, p));
    });
    return total;
}

}  // namespace bq

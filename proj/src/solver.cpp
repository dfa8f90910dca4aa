#include "boussinesq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "boussinesq/errors.hpp"

namespace bq {
namespace {

constexpr cplx I{0.0, 1.0};

double modulus_squared(const Vec2& xi) noexcept { return xi[0] * xi[0] + xi[1] * xi[1]; }

// One integrating-factor Runge-Kutta step for U' = L U + B(U, U).
StateVector lawson_step(const StateVector& u, double h, const AbcdParams& p, double fraction) {
    auto flow = [&](const StateVector& v, double tau) { return apply_linear(v, tau, p); };
    auto quad = [&](const StateVector& v) { return quadratic_term(v, v, p, fraction); };

    const StateVector u_half = flow(u, 0.5 * h);
    const StateVector u_full = flow(u, h);

    const StateVector k1 = quad(u);
    StateVector stage = u;
    stage.axpy(0.5 * h, k1);
    const StateVector k2 = quad(flow(stage, 0.5 * h));
    stage = u_half;
    stage.axpy(0.5 * h, k2);
    const StateVector k3 = quad(stage);
    stage = u_full;
    stage.axpy(h, flow(k3, 0.5 * h));
    const StateVector k4 = quad(stage);

    StateVector middle = k2;
    middle += k3;
    StateVector next = u_full;
    next.axpy(h / 6.0, flow(k1, h));
    next.axpy(h / 3.0, flow(middle, 0.5 * h));
    next.axpy(h / 6.0, k4);
    return next;
}

double max_phase_speed(const FrequencyGrid& grid, const AbcdParams& p) {
    double fastest = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.modulus(i);
        if (r == 0.0) continue;
        fastest = std::max(fastest, std::abs(r * eval_dispersion(r, p)));
    }
    return fastest;
}

}  // namespace

StateVector linear_rhs(const StateVector& state, const AbcdParams& p) {
    const FrequencyGrid& g = state.grid();
    const int dim = g.dimension();
    StateVector out = StateVector::zeros(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec2 xi = g.frequency(i);
        const double r2 = modulus_squared(xi);
        const double height = (1.0 - p.a() * r2) / (1.0 + p.b() * r2);
        const double speed = (1.0 - p.c() * r2) / (1.0 + p.d() * r2);
        cplx div = 0.0;
        for (int axis = 0; axis < dim; ++axis) div += xi[axis] * state.velocity(axis).coeffs[i];
        out.eta().coeffs[i] = -I * height * div;
        const cplx eta = state.eta().coeffs[i];
        for (int axis = 0; axis < dim; ++axis) out.velocity(axis).coeffs[i] = -I * speed * xi[axis] * eta;
    }
    return out;
}

StateVector nonlinear_rhs(const StateVector& state, const AbcdParams& p, double fraction) {
    require_band_limited(state, fraction);
    StateVector out = linear_rhs(state, p);
    out += quadratic_term(state, state, p, fraction);
    return out;
}

Trajectory evolve(const StateVector& initial, const EvolveConfig& config) {
    if (!(config.dt > 0.0) || !(config.T > 0.0) || !std::isfinite(config.T)) {
        throw ConfigError("evolve needs dt > 0 and a finite T > 0");
    }
    if (!(config.dealias > 0.0) || config.dealias > 1.0) throw ConfigError("dealias fraction must lie in (0, 1]");
    if (config.snapshot_every < 0) throw ConfigError("snapshot interval must be non-negative");
    if (config.quadratic) require_band_limited(initial, config.dealias);

    Trajectory out;
    out.steps = static_cast<int>(std::ceil(config.T / config.dt - 1e-9));
    out.step = config.T / out.steps;
    out.phase_per_step = out.step * max_phase_speed(initial.grid(), config.params);
    out.times.push_back(0.0);
    out.states.push_back(initial);

    const double initial_norm = state_norm(initial);
    StateVector u = initial;
    for (int n = 1; n <= out.steps; ++n) {
        u = config.quadratic ? lawson_step(u, out.step, config.params, config.dealias)
                             : apply_linear(u, out.step, config.params);
        const double size = state_norm(u);
        if (!std::isfinite(size) || (initial_norm > 0.0 && size > config.blowup_factor * initial_norm)) {
            std::ostringstream os;
            os << "solution norm " << size << " exceeded " << config.blowup_factor << " times the initial norm "
               << initial_norm << " at t = " << n * out.step << " (step " << n << ")";
            throw BlowUpError(os.str());
        }
        const bool last = n == out.steps;
        if (last || (config.snapshot_every > 0 && n % config.snapshot_every == 0)) {
            out.times.push_back(last ? config.T : n * out.step);
            out.states.push_back(u);
        }
    }
    return out;
}

double energy(const StateVector& state, const AbcdParams& p) {
    const FrequencyGrid& g = state.grid();
    const int dim = g.dimension();
    double gradient_u = 0.0, gradient_eta = 0.0, mass_u = 0.0, mass_eta = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r2 = modulus_squared(g.frequency(i));
        const double eta2 = std::norm(state.eta().coeffs[i]);
        double u2 = 0.0;
        for (int axis = 0; axis < dim; ++axis) u2 += std::norm(state.velocity(axis).coeffs[i]);
        gradient_u += r2 * u2;
        gradient_eta += r2 * eta2;
        mass_u += u2;
        mass_eta += eta2;
    }
    const double parseval = g.lattice_measure() / std::pow(2.0 * std::numbers::pi, dim);
    const double quadratic = parseval * (-p.a() * gradient_u - p.c() * gradient_eta + mass_u + mass_eta);

    const PhysicalField eta = to_physical(state.eta());
    double cubic = 0.0;
    std::vector<PhysicalField> velocity;
    for (int axis = 0; axis < dim; ++axis) velocity.push_back(to_physical(state.velocity(axis)));
    for (std::size_t i = 0; i < g.size(); ++i) {
        double u2 = 0.0;
        for (const PhysicalField& v : velocity) u2 += v.values[i].real() * v.values[i].real();
        cubic += u2 * eta.values[i].real();
    }
    cubic *= g.cell_volume();
    return 0.5 * (quadratic + cubic);
}

std::vector<EnergySample> energy_series(const Trajectory& trajectory, const AbcdParams& p) {
    std::vector<EnergySample> out;
    const double initial = energy(trajectory.states.front(), p);
    for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
        const double E = energy(trajectory.states[k], p);
        const double drift = initial != 0.0 ? std::abs(E - initial) / std::abs(initial) : std::abs(E - initial);
        out.push_back({trajectory.times[k], E, drift});
    }
    return out;
}

double max_relative_drift(std::span<const EnergySample> series) {
    double worst = 0.0;
    for (const EnergySample& e : series) worst = std::max(worst, e.relative_drift);
    return worst;
}

StateVector smooth_bump(const FrequencyGrid& grid, double amplitude, double width, double fraction) {
    if (!(width > 0.0)) throw ConfigError("bump width must be positive");
    const int dim = grid.dimension();
    const std::size_t stride = dim == 2 ? static_cast<std::size_t>(grid.points(1)) : 1;
    // Periodic coordinate of sample j on one axis, centred on the origin.
    auto coordinate = [&](int axis, std::size_t j) {
        const double x = static_cast<double>(j) * grid.cell(axis);
        return x < grid.extent() ? x : x - 2.0 * grid.extent();
    };
    PhysicalField bump{grid, std::vector<cplx>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double r2 = std::pow(coordinate(0, i / stride), 2);
        if (dim == 2) r2 += std::pow(coordinate(1, i % stride), 2);
        bump.values[i] = amplitude * std::exp(-r2 / (width * width));
    }
    SpectralField profile = to_spectral(bump);
    dealias(profile, fraction);
    StateVector out = StateVector::zeros(grid);
    for (int axis = 0; axis < dim; ++axis) {
        out.velocity(axis) =
            apply_multiplier(profile, [axis, width](const Vec2& xi) { return cplx{0.0, width * xi[axis]}; });
    }
    out.eta() = std::move(profile);
    return out;
}

namespace {

double defect_against(const StateVector& data, const StateVector& second, const AbcdParams& p, double t,
                      double amplitude, double dt) {
    EvolveConfig config;
    config.dt = dt;
    config.T = t;
    config.params = p;
    const StateVector scaled = amplitude * data;
    StateVector residual = evolve(scaled, config).final_state();
    residual -= apply_linear(scaled, t, p);
    residual.axpy(-amplitude * amplitude, second);
    return state_norm(residual) / std::pow(2.0 * std::numbers::pi, 0.5 * data.dimension());
}

}  // namespace

double picard_defect(const StateVector& data, const AbcdParams& p, double t, double amplitude, double dt,
                     int time_order) {
    if (amplitude == 0.0) return 0.0;
    return defect_against(data, duhamel_bilinear(data, data, t, p, time_order), p, t, amplitude, dt);
}

PicardDefect picard_compare(const StateVector& data, const AbcdParams& p, double t, double amplitude, double dt,
                            int time_order) {
    if (amplitude == 0.0) return {0.0, 0.0, 0.0, 0.0};
    const StateVector second = duhamel_bilinear(data, data, t, p, time_order);
    const double full = defect_against(data, second, p, t, amplitude, dt);
    const double half = defect_against(data, second, p, t, 0.5 * amplitude, dt);
    return {amplitude, full, half, half > 0.0 ? full / half : 0.0};
}

}  // namespace bq

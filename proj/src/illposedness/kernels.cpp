#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "boussinesq/errors.hpp"
#include "boussinesq/illposedness.hpp"
#include "boussinesq/parallel.hpp"
#include "boussinesq/quadrature.hpp"

namespace bq {
namespace {

using Triple = std::array<cplx, 3>;

// Linear evolution of the unit data vector at one frequency: the data have
// eta = 0 and every velocity component equal to one.
Triple evolved_profile(const LocalizedData& data, const Vec2& kappa, double s_time) {
    if (data.dimension() == 1) {
        const Matrix2 S = propagator_1d(kappa[0], s_time, data.params);
        return {S[0][1], S[1][1], cplx{}};
    }
    const Matrix3 S = propagator_2d(kappa, s_time, data.params);
    return {S[0][1] + S[0][2], S[1][1] + S[1][2], S[2][1] + S[2][2]};
}

// Calls visit(box) for every nonempty clipped box {kappa in B_i, xi - kappa in B_j}.
template <class Visit>
void for_each_overlap(const LocalizedData& data, const Vec2& xi, Visit&& visit) {
    const int dim = data.dimension();
    for (const Box& first : data.support) {
        for (const Box& second : data.support) {
            Box clipped{{0.0, 0.0}, {0.0, 0.0}};
            bool empty = false;
            for (int axis = 0; axis < dim; ++axis) {
                clipped.lo[axis] = std::max(first.lo[axis], xi[axis] - second.hi[axis]);
                clipped.hi[axis] = std::min(first.hi[axis], xi[axis] - second.lo[axis]);
                if (clipped.hi[axis] <= clipped.lo[axis]) empty = true;
            }
            if (!empty) visit(clipped);
        }
    }
}

double norm_of(const Triple& v) {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

// Ascending breakpoints of the outer integral on one axis: interval ends and
// every pairwise sum of support edges falling inside.
std::vector<double> breakpoints(const LocalizedData& data, int axis, double lo, double hi) {
    std::vector<double> points{lo, hi};
    for (const Box& first : data.support) {
        for (const Box& second : data.support) {
            for (double e1 : {first.lo[axis], first.hi[axis]}) {
                for (double e2 : {second.lo[axis], second.hi[axis]}) {
                    const double x = e1 + e2;
                    if (x > lo && x < hi) points.push_back(x);
                }
            }
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end(),
                             [](double x, double y) { return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(x)); }),
                 points.end());
    return points;
}

struct OuterNode {
    Vec2 xi;
    double weight;
};

std::vector<OuterNode> outer_nodes(const LocalizedData& data, int order) {
    const int dim = data.dimension();
    const double reach = dim == 1 ? 1.0 : 2.0;
    std::array<std::vector<double>, 2> cuts;
    for (int axis = 0; axis < dim; ++axis) cuts[axis] = breakpoints(data, axis, -reach, reach);
    if (dim == 1) cuts[1] = {0.0, 0.0};

    const GaussLegendre& rule = GaussLegendre::of_order(order);
    std::vector<OuterNode> nodes;
    const std::size_t cells1 = dim == 1 ? 1 : cuts[1].size() - 1;
    for (std::size_t i = 0; i + 1 < cuts[0].size(); ++i) {
        for (std::size_t j = 0; j < cells1; ++j) {
            const Vec2 centre{0.5 * (cuts[0][i] + cuts[0][i + 1]),
                              dim == 1 ? 0.0 : 0.5 * (cuts[1][j] + cuts[1][j + 1])};
            bool reachable = false;
            for_each_overlap(data, centre, [&](const Box&) { reachable = true; });
            if (!reachable) continue;
            rule.for_each_node(cuts[0][i], cuts[0][i + 1], [&](double x0, double w0) {
                if (dim == 1) {
                    nodes.push_back({{x0, 0.0}, w0});
                    return;
                }
                rule.for_each_node(cuts[1][j], cuts[1][j + 1],
                                   [&](double x1, double w1) { nodes.push_back({{x0, x1}, w0 * w1}); });
            });
        }
    }
    return nodes;
}

}  // namespace

Triple q_kernel_fixed(const LocalizedData& data, const Vec2& xi, double s_time, double t, int order) {
    const int dim = data.dimension();
    const GaussLegendre& rule = GaussLegendre::of_order(order);
    std::array<cplx, 2> flux{};  // (eta u_j)^ per axis
    cplx kinetic{};              // (|u|^2)^
    for_each_overlap(data, xi, [&](const Box& box) {
        auto accumulate = [&](const Vec2& kappa, double w) {
            const Triple a = evolved_profile(data, kappa, s_time);
            const Triple b = evolved_profile(data, {xi[0] - kappa[0], xi[1] - kappa[1]}, s_time);
            for (int j = 0; j < dim; ++j) {
                flux[j] += w * a[0] * b[1 + j];
                kinetic += w * a[1 + j] * b[1 + j];
            }
        };
        rule.for_each_node(box.lo[0], box.hi[0], [&](double k0, double w0) {
            if (dim == 1) {
                accumulate({k0, 0.0}, w0);
                return;
            }
            rule.for_each_node(box.lo[1], box.hi[1], [&](double k1, double w1) { accumulate({k0, k1}, w0 * w1); });
        });
    });

    const double scale = data.amplitude * data.amplitude / std::pow(2.0 * std::numbers::pi, dim);
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    const cplx minus_i{0.0, -1.0};
    const AbcdParams& p = data.params;

    Triple forcing{};
    cplx divergence{};
    for (int j = 0; j < dim; ++j) divergence += xi[j] * flux[j];
    forcing[0] = minus_i * scale * divergence / (1.0 + p.b() * r2);
    for (int j = 0; j < dim; ++j) forcing[1 + j] = minus_i * scale * xi[j] * kinetic / (2.0 * (1.0 + p.d() * r2));

    Triple q{};
    if (dim == 1) {
        const Matrix2 S = propagator_1d(xi[0], t - s_time, p);
        for (int r = 0; r < 2; ++r) q[r] = S[r][0] * forcing[0] + S[r][1] * forcing[1];
    } else {
        const Matrix3 S = propagator_2d(xi, t - s_time, p);
        for (int r = 0; r < 3; ++r) q[r] = S[r][0] * forcing[0] + S[r][1] * forcing[1] + S[r][2] * forcing[2];
    }
    return q;
}

Triple q_kernel(const LocalizedData& data, const Vec2& xi, double s_time, double t, double tolerance) {
    Triple previous = q_kernel_fixed(data, xi, s_time, t, 8);
    for (int order : {16, 32, 64}) {
        const Triple current = q_kernel_fixed(data, xi, s_time, t, order);
        const Triple diff{current[0] - previous[0], current[1] - previous[1], current[2] - previous[2]};
        const double size = norm_of(current);
        if (norm_of(diff) <= tolerance * size || size == 0.0) return current;
        if (order == 64) {
            std::ostringstream os;
            os.precision(17);
            os << "kernel quadrature did not settle: order 32 gives " << previous[1] << ", order 64 gives "
               << current[1];
            throw QuadratureError(os.str());
        }
        previous = current;
    }
    return previous;
}

cplx q2_kernel(const LocalizedData& data, const Vec2& xi, double s_time, double t, double tolerance) {
    return q_kernel(data, xi, s_time, t, tolerance)[1];
}

namespace {

double lowfreq_norm_at(const LocalizedData& data, double sprime, double t, int frequency, int convolution,
                       int time) {
    const std::vector<OuterNode> nodes = outer_nodes(data, frequency);
    const GaussLegendre& time_rule = GaussLegendre::of_order(time);
    std::vector<double> contributions(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) {
        const Vec2& xi = nodes[i].xi;
        cplx integral{};
        time_rule.for_each_node(0.0, t, [&](double s_time, double w) {
            integral += w * q_kernel_fixed(data, xi, s_time, t, convolution)[1];
        });
        const double bracket = 1.0 + xi[0] * xi[0] + xi[1] * xi[1];
        contributions[i] = nodes[i].weight * std::pow(bracket, sprime) * std::norm(integral);
    });
    double total = 0.0;
    for (double c : contributions) total += c;
    return std::sqrt(total);
}

int refined(int order) { return (3 * order + 1) / 2; }

}  // namespace

LowFrequencyNorm a2_lowfreq_norm(const LocalizedData& data, double sprime, const QuadratureOrders& orders) {
    return a2_lowfreq_norm(data, sprime, time_scale(data.regime, data.N), orders);
}

LowFrequencyNorm a2_lowfreq_norm(const LocalizedData& data, double sprime, double t, const QuadratureOrders& orders) {
    if (orders.frequency < 1 || orders.convolution < 1 || orders.time < 1) {
        throw ConfigError("quadrature orders must be positive");
    }
    const double value = lowfreq_norm_at(data, sprime, t, orders.frequency, orders.convolution, orders.time);
    const double fine = lowfreq_norm_at(data, sprime, t, refined(orders.frequency), refined(orders.convolution),
                                        refined(orders.time));
    const double certificate = fine > 0.0 ? std::abs(value - fine) / fine : std::abs(value - fine);
    return {value, fine, certificate};
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope fit needs matching samples, at least two");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive values");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw DomainError("log-log fit needs distinct abscissae");
    return sxy / sxx;
}

InflationReport inflation_sweep(IllposedRegime regime, double s, double sprime, std::span<const double> Ns,
                                std::optional<AbcdParams> params, const QuadratureOrders& orders) {
    if (Ns.size() < 3) throw ConfigError("an inflation sweep needs at least three values of N");
    std::vector<InflationPoint> points(Ns.size());
    std::vector<LocalizedData> data;
    data.reserve(Ns.size());
    for (double N : Ns) data.push_back(build_data(regime, N, s, params));
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        const double t = time_scale(regime, Ns[i]);
        const LowFrequencyNorm norm = a2_lowfreq_norm(data[i], sprime, t, orders);
        points[i] = {Ns[i], t, norm.value, norm.certificate};
    }
    std::vector<double> xs, ys;
    double max_certificate = 0.0;
    for (const InflationPoint& pt : points) {
        xs.push_back(pt.N);
        ys.push_back(pt.norm);
        max_certificate = std::max(max_certificate, pt.certificate);
    }
    const double slope = loglog_slope(xs, ys);
    const double predicted = predicted_exponent(regime, s);
    return {regime, s, sprime, std::move(points), slope, predicted, max_certificate,
            std::abs(slope - predicted) <= kSlopeTolerance};
}

}  // namespace bq

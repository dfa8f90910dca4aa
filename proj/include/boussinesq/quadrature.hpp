#pragma once

/// @file quadrature.hpp
/// Gauss-Legendre rules of arbitrary order.

#include <vector>

namespace bq {

class GaussLegendre {
public:
    /// Shared, lazily built rule of the requested order (thread-safe).
    [[nodiscard]] static const GaussLegendre& of_order(int order);

    [[nodiscard]] int order() const noexcept { return static_cast<int>(nodes_.size()); }
    /// Nodes and weights on [-1, 1].
    [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

    /// Integral of fn over [lo, hi]; the result type follows fn.
    template <class Fn>
    [[nodiscard]] auto integrate(Fn&& fn, double lo, double hi) const {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        decltype(fn(mid)) acc{};
        for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * fn(mid + half * nodes_[i]);
        return acc * half;
    }

    /// Calls visit(x, w) for every node mapped to [lo, hi] with its scaled weight.
    template <class Visit>
    void for_each_node(double lo, double hi, Visit&& visit) const {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (std::size_t i = 0; i < nodes_.size(); ++i) visit(mid + half * nodes_[i], half * weights_[i]);
    }

private:
    explicit GaussLegendre(int order);
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

}  // namespace bq

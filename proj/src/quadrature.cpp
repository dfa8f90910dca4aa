#include "boussinesq/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <memory>
#include <mutex>

#include "boussinesq/errors.hpp"

namespace bq {

GaussLegendre::GaussLegendre(int order) {
    if (order < 1) throw QuadratureError("Gauss-Legendre order must be positive");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order)),
        &gsl_integration_glfixed_table_free);
    if (!table) throw QuadratureError("GSL could not allocate a Gauss-Legendre table");
    nodes_.resize(static_cast<std::size_t>(order));
    weights_.resize(static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        gsl_integration_glfixed_point(-1.0, 1.0, i, &nodes_[i], &weights_[i], table.get());
    }
}

const GaussLegendre& GaussLegendre::of_order(int order) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendre>> rules;
    std::lock_guard lock(mutex);
    auto& slot = rules[order];
    if (!slot) slot.reset(new GaussLegendre(order));
    return *slot;
}

}  // namespace bq

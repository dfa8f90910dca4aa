#pragma once

/// @file diagnostics.hpp
/// Randomised self-checks of the linear machinery: the eigen-decomposition of
/// the two-dimensional operator and the group laws of the propagators.

#include <cstdint>
#include <string>
#include <vector>

namespace bq {

struct CheckResult {
    std::string check;   ///< diagonalization, identity, composition, inverse, modulus
    std::string regime;  ///< coefficient family, or "random-generic"
    int dimension;
    long samples;
    double max_error;
    double tolerance;
    [[nodiscard]] bool pass() const noexcept { return max_error < tolerance; }
};

inline constexpr double kLinearCheckTolerance = 1e-12;

/// Max over samples of ||P^{-1} A P - diag(0, rho, -rho)||_max and
/// ||P P^{-1} - I||_max, with generic coefficients drawn from a, c in [-3, -0.1],
/// b, d in [0.1, 3] and xi uniform in [-50, 50]^2.
[[nodiscard]] CheckResult diagonalization_check(long samples, std::uint64_t seed);

/// Identity at t = 0, S(t1 + t2) = S(t1) S(t2), S(-t) S(t) = I and
/// conservation of every diagonal coefficient modulus, for the generic,
/// KdV-KdV, BBM-BBM and symmetric a = c, b = d families in one and two dimensions.
/// Errors are relative to the largest input coefficient.
[[nodiscard]] std::vector<CheckResult> semigroup_checks(int trials, std::uint64_t seed);

}  // namespace bq

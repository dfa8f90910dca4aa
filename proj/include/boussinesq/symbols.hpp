#pragma once

/// @file symbols.hpp
/// Fourier symbols of the linearised (abcd)-Boussinesq system.
///
/// The scalar dispersion symbols are
///   omega_eta(xi) = (1 - a xi^2) / (1 + b xi^2),
///   omega_u(xi)   = (1 - c xi^2) / (1 + d xi^2),
/// from which the symmetriser h = sqrt(omega_eta / omega_u) and the
/// dispersion relation sigma = sqrt(omega_eta * omega_u) are built.
/// In two dimensions the same radial formulas are evaluated at |xi|.

#include <optional>
#include <string>
#include <string_view>

namespace bq {

/// Dispersion regimes with a well-defined linear flow.
enum class Regime {
    Generic,    ///< a, c < 0 and b, d > 0
    KdVKdV,     ///< a = c = 1, b = d = 0
    BBMBBM,     ///< a = c = 0, b = d = 1/6
    GenericAB,  ///< a = c and b = d >= 0
};

/// Absolute tolerance used when matching coefficients against a regime.
inline constexpr double kRegimeTolerance = 1e-12;

[[nodiscard]] std::string_view to_string(Regime regime) noexcept;

/// True when the coefficients satisfy the constraints of `regime`.
[[nodiscard]] bool satisfies(Regime regime, double a, double b, double c, double d) noexcept;

/// Most specific regime matching the coefficients, checked in the order
/// KdVKdV, BBMBBM, Generic, GenericAB. Empty when nothing matches.
[[nodiscard]] std::optional<Regime> classify(double a, double b, double c, double d) noexcept;

/// Validated coefficient set. Construction fails with RegimeError when the
/// coefficients do not satisfy the declared regime, so every instance has a
/// well-defined linear flow.
class AbcdParams {
public:
    AbcdParams(double a, double b, double c, double d, Regime regime);

    /// Classify and construct; throws RegimeError for unclassified coefficients.
    [[nodiscard]] static AbcdParams classified(double a, double b, double c, double d);
    [[nodiscard]] static AbcdParams kdv_kdv();
    [[nodiscard]] static AbcdParams bbm_bbm();

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] double d() const noexcept { return d_; }
    [[nodiscard]] Regime regime() const noexcept { return regime_; }

    /// True when both equations share one scalar symbol (a = c and b = d).
    /// The dispersion relation is then the signed rational symbol and the
    /// symmetriser is identically one.
    [[nodiscard]] bool single_symbol() const noexcept;

    friend bool operator==(const AbcdParams&, const AbcdParams&) = default;

private:
    double a_, b_, c_, d_;
    Regime regime_;
};

struct OmegaPair {
    double eta;       ///< (1 - a xi^2) / (1 + b xi^2)
    double velocity;  ///< (1 - c xi^2) / (1 + d xi^2)
};

[[nodiscard]] OmegaPair eval_omega(double xi, const AbcdParams& p);

/// Symmetriser sqrt(omega_eta / omega_u); identically 1 for single-symbol
/// parameter sets. Throws DomainError when the ratio is not positive.
[[nodiscard]] double eval_h(double xi, const AbcdParams& p);

/// sqrt(omega_eta * omega_u) >= 0. Throws DomainError when the product is negative.
[[nodiscard]] double eval_sigma(double xi, const AbcdParams& p);

/// Dispersion relation used by the linear flows, evaluated at a modulus.
/// Generic parameters give sqrt(omega_eta * omega_u); single-symbol
/// parameters give the signed symbol (1 - a r^2) / (1 + b r^2).
/// The same radial function serves both dimensions.
[[nodiscard]] double eval_dispersion(double modulus, const AbcdParams& p);

/// Two-dimensional symmetriser sqrt(omega_eta / omega_u) at a modulus,
/// identically 1 for single-symbol parameters.
[[nodiscard]] double eval_varsigma(double modulus, const AbcdParams& p);

/// Large-frequency expansion of the dispersion relation for Generic
/// parameters:
///   sigma(xi) = leading * sqrt(1 + x(xi)),
///   x(xi) = (alpha xi^2 + beta) / ((1 + b xi^2)(1 + d xi^2)),
/// with leading = sqrt(ac / bd), alpha = -(b + d) - bd(a + c)/(ac) and
/// beta = bd/(ac) - 1.
struct SigmaExpansion {
    double leading;
    double alpha;
    double beta;
    double b;
    double d;

    /// x(xi) above.
    [[nodiscard]] double relative_correction(double xi) const noexcept;
    /// sigma(xi) - leading, evaluated without cancellation.
    [[nodiscard]] double tilde(double xi) const noexcept;
    /// leading * x(xi) / 2, the first term of the expansion of tilde.
    [[nodiscard]] double first_order(double xi) const noexcept;
};

/// Throws RegimeError unless the parameters are Generic.
[[nodiscard]] SigmaExpansion sigma_expansion(const AbcdParams& p);

/// Modelling parameters from which a, b, c, d are derived.
struct PhysicalDerivation {
    double theta;
    double nu;
    double mu;
    double tau;
};

struct PhysicalParams {
    double a, b, c, d;
    /// Empty when the derived coefficients fall outside every regime.
    std::optional<Regime> regime;
    /// The identity a + b + c + d = 1/3 - tau holds only when mu = nu.
    bool sum_identity_applies;
};

/// a = (theta^2 - 1/3) nu / 2,   b = (theta^2 - 1/3)(1 - nu) / 2,
/// c = (1 - theta^2) nu / 2 - tau, d = (1 - theta^2)(1 - mu) / 2.
[[nodiscard]] PhysicalParams params_from_physical(const PhysicalDerivation& phys) noexcept;

}  // namespace bq

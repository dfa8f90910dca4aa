#include "boussinesq/symbols.hpp"

#include <cmath>
#include <sstream>

#include "boussinesq/errors.hpp"

namespace bq {
namespace {

bool near(double x, double y) noexcept { return std::abs(x - y) <= kRegimeTolerance; }

std::string describe(double a, double b, double c, double d) {
    std::ostringstream os;
    os.precision(17);
    os << "(a, b, c, d) = (" << a << ", " << b << ", " << c << ", " << d << ")";
    return os.str();
}

[[noreturn]] void domain_failure(const char* what, double xi, double value) {
    std::ostringstream os;
    os.precision(17);
    os << what << " undefined at xi = " << xi << " (radicand " << value << ")";
    throw DomainError(os.str());
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::Generic: return "Generic";
        case Regime::KdVKdV: return "KdVKdV";
        case Regime::BBMBBM: return "BBMBBM";
        case Regime::GenericAB: return "GenericAB";
    }
    return "unknown";
}

bool satisfies(Regime regime, double a, double b, double c, double d) noexcept {
    switch (regime) {
        case Regime::Generic: return a < 0.0 && c < 0.0 && b > 0.0 && d > 0.0;
        case Regime::KdVKdV: return near(a, 1.0) && near(c, 1.0) && near(b, 0.0) && near(d, 0.0);
        case Regime::BBMBBM:
            return near(a, 0.0) && near(c, 0.0) && near(b, 1.0 / 6.0) && near(d, 1.0 / 6.0);
        case Regime::GenericAB: return near(a, c) && near(b, d) && b >= -kRegimeTolerance;
    }
    return false;
}

std::optional<Regime> classify(double a, double b, double c, double d) noexcept {
    for (Regime r : {Regime::KdVKdV, Regime::BBMBBM, Regime::Generic, Regime::GenericAB}) {
        if (satisfies(r, a, b, c, d)) return r;
    }
    return std::nullopt;
}

AbcdParams::AbcdParams(double a, double b, double c, double d, Regime regime)
    : a_(a), b_(b), c_(c), d_(d), regime_(regime) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
        throw RegimeError("non-finite coefficients " + describe(a, b, c, d));
    }
    if (!satisfies(regime, a, b, c, d)) {
        throw RegimeError(describe(a, b, c, d) + " violates regime " + std::string(to_string(regime)));
    }
}

AbcdParams AbcdParams::classified(double a, double b, double c, double d) {
    const auto regime = classify(a, b, c, d);
    if (!regime) throw RegimeError(describe(a, b, c, d) + " matches no supported regime");
    return AbcdParams(a, b, c, d, *regime);
}

AbcdParams AbcdParams::kdv_kdv() { return AbcdParams(1.0, 0.0, 1.0, 0.0, Regime::KdVKdV); }

AbcdParams AbcdParams::bbm_bbm() {
    return AbcdParams(0.0, 1.0 / 6.0, 0.0, 1.0 / 6.0, Regime::BBMBBM);
}

bool AbcdParams::single_symbol() const noexcept {
    return regime_ != Regime::Generic || (near(a_, c_) && near(b_, d_));
}

OmegaPair eval_omega(double xi, const AbcdParams& p) {
    const double x2 = xi * xi;
    return {(1.0 - p.a() * x2) / (1.0 + p.b() * x2), (1.0 - p.c() * x2) / (1.0 + p.d() * x2)};
}

double eval_h(double xi, const AbcdParams& p) {
    if (p.single_symbol()) return 1.0;
    const auto [w1, w2] = eval_omega(xi, p);
    const double ratio = w1 / w2;
    if (!(ratio > 0.0)) domain_failure("h", xi, ratio);
    return std::sqrt(ratio);
}

double eval_sigma(double xi, const AbcdParams& p) {
    const auto [w1, w2] = eval_omega(xi, p);
    const double product = w1 * w2;
    if (product < 0.0) domain_failure("sigma", xi, product);
    return std::sqrt(product);
}

double eval_dispersion(double modulus, const AbcdParams& p) {
    if (p.single_symbol()) return eval_omega(modulus, p).eta;
    return eval_sigma(modulus, p);
}

double eval_varsigma(double modulus, const AbcdParams& p) {
    if (p.single_symbol()) return 1.0;
    const double r2 = modulus * modulus;
    const double radicand =
        (1.0 - p.a() * r2) * (1.0 + p.d() * r2) / ((1.0 - p.c() * r2) * (1.0 + p.b() * r2));
    if (!(radicand > 0.0)) domain_failure("varsigma", modulus, radicand);
    return std::sqrt(radicand);
}

double SigmaExpansion::relative_correction(double xi) const noexcept {
    const double x2 = xi * xi;
    return (alpha * x2 + beta) / ((1.0 + b * x2) * (1.0 + d * x2));
}

double SigmaExpansion::tilde(double xi) const noexcept {
    // leading * (sqrt(1 + x) - 1) rewritten to avoid cancellation for small x.
    const double x = relative_correction(xi);
    return leading * x / (std::sqrt(1.0 + x) + 1.0);
}

double SigmaExpansion::first_order(double xi) const noexcept {
    return 0.5 * leading * relative_correction(xi);
}

SigmaExpansion sigma_expansion(const AbcdParams& p) {
    if (p.regime() != Regime::Generic) {
        throw RegimeError("sigma expansion requires Generic parameters, got " +
                          std::string(to_string(p.regime())));
    }
    const double ac = p.a() * p.c();
    const double bd = p.b() * p.d();
    return SigmaExpansion{
        .leading = std::sqrt(ac / bd),
        .alpha = -(p.b() + p.d()) - bd * (p.a() + p.c()) / ac,
        .beta = bd / ac - 1.0,
        .b = p.b(),
        .d = p.d(),
    };
}

PhysicalParams params_from_physical(const PhysicalDerivation& phys) noexcept {
    const double t2 = phys.theta * phys.theta;
    const double a = 0.5 * (t2 - 1.0 / 3.0) * phys.nu;
    const double b = 0.5 * (t2 - 1.0 / 3.0) * (1.0 - phys.nu);
    const double c = 0.5 * (1.0 - t2) * phys.nu - phys.tau;
    const double d = 0.5 * (1.0 - t2) * (1.0 - phys.mu);
    return PhysicalParams{a, b, c, d, classify(a, b, c, d), phys.mu == phys.nu};
}

}  // namespace bq

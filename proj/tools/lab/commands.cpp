#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "boussinesq/bilinear.hpp"
#include "boussinesq/diagnostics.hpp"
#include "boussinesq/errors.hpp"
#include "boussinesq/illposedness.hpp"
#include "boussinesq/solver.hpp"
#include "lab.hpp"

namespace bq::lab {
namespace {

constexpr double kCertificateTolerance = 1e-4;
constexpr double kSupportTolerance = 1e-12;
constexpr double kSchurExponentTolerance = 0.1;
constexpr double kGeometryBound = 0.75;
constexpr double kEnergyDriftTolerance = 1e-6;
constexpr double kEnergyRefinementRatio = 8.0;
constexpr double kPicardRatioLow = 6.0;
constexpr double kPicardRatioHigh = 10.0;
constexpr double kProbeRefinementTolerance = 0.1;

constexpr std::array<std::string_view, 8> kCommands{"sweep",  "lemmas", "geometry", "schur", "bilinear-probe",
                                                    "evolve", "energy", "diag-check"};

IllposedRegime regime_option(Options& options) {
    const auto name = options.text("regime");
    if (!name) throw ConfigError("missing option regime (gen1d, kdv1d, gen2d, kdv2d or bbm2d)");
    const auto regime = parse_illposed_regime(*name);
    if (!regime) throw ConfigError("unknown regime '" + *name + "'");
    return *regime;
}

double required_real(Options& options, const std::string& key) {
    const auto value = options.real(key);
    if (!value) throw ConfigError("missing option " + key);
    return *value;
}

/// a, b, c, d given together, or not at all.
std::optional<AbcdParams> coefficient_options(Options& options) {
    std::array<std::optional<double>, 4> values{options.real("a"), options.real("b"), options.real("c"),
                                                options.real("d")};
    const auto given = std::count_if(values.begin(), values.end(), [](const auto& v) { return v.has_value(); });
    if (given == 0) return std::nullopt;
    if (given != 4) throw ConfigError("coefficients a, b, c, d must be given together");
    try {
        return AbcdParams::classified(*values[0], *values[1], *values[2], *values[3]);
    } catch (const RegimeError& e) {
        throw ConfigError(e.what());
    }
}

int positive_int(Options& options, const std::string& key, long fallback) {
    const long value = options.integer(key, fallback);
    if (value < 1 || value > 1L << 30) throw ConfigError("option " + key + " must be a positive integer");
    return static_cast<int>(value);
}

double positive_real(Options& options, const std::string& key, double fallback) {
    const double value = options.real(key, fallback);
    if (!(value > 0.0)) throw ConfigError("option " + key + " must be positive");
    return value;
}

FrequencyGrid periodic_grid(int dimension, double extent, int points) {
    return dimension == 1 ? FrequencyGrid::line(extent, points) : FrequencyGrid::plane(extent, points);
}

/// Lattice with spacing 1/4, fine enough to hit every support edge, and
/// Nyquist at least 4N along the first axis and 4 along the second.
FrequencyGrid support_grid(IllposedRegime regime, double N) {
    const double extent = 4.0 * std::numbers::pi;
    const auto first = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::ceil(32.0 * N))));
    return dimension_of(regime) == 1 ? FrequencyGrid::line(extent, first) : FrequencyGrid::plane(extent, first, 32);
}

// ---------------------------------------------------------------------------

Report sweep(Options& options) {
    const IllposedRegime regime = regime_option(options);
    const double s = required_real(options, "s");
    const double sprime = options.real("sprime", 0.0);
    const std::vector<double> Ns = options.reals("N", {128.0, 256.0, 512.0, 1024.0});
    QuadratureOrders orders;
    orders.frequency = positive_int(options, "frequency_order", orders.frequency);
    orders.convolution = positive_int(options, "convolution_order", orders.convolution);
    orders.time = positive_int(options, "time_order", orders.time);
    const std::optional<AbcdParams> params = coefficient_options(options);
    const bool support = options.flag("support", false);
    options.finish();
    if (Ns.size() < 3) throw ConfigError("sweep needs at least three N values");
    for (double N : Ns) {
        if (!(N >= 64.0)) throw ConfigError("sweep needs every N >= 64");
    }
    if (params) require_family(regime, *params);

    const InflationReport inflation = inflation_sweep(regime, s, sprime, Ns, params, orders);
    std::vector<std::string> columns{"regime", "s", "sprime", "N", "t", "norm", "slope_fit", "predicted", "pass"};
    if (support) columns.emplace_back("support_fraction");
    Report report("sweep/1", columns);
    for (const InflationPoint& point : inflation.points) {
        bool pass = inflation.pass && point.certificate < kCertificateTolerance;
        std::vector<std::string> row{std::string(to_string(regime)), format_number(s), format_number(sprime),
                                     format_number(point.N), format_number(point.t), format_number(point.norm),
                                     format_number(inflation.slope), format_number(inflation.predicted)};
        std::string fraction;
        if (support) {
            const LocalizedData data = build_data(regime, point.N, s, support_grid(regime, point.N), params);
            const double value = support_fraction(picard_a2(data, point.t, 8), data);
            pass = pass && value >= 1.0 - kSupportTolerance;
            fraction = format_number(value);
        }
        row.push_back(format_flag(pass));
        if (support) row.push_back(fraction);
        report.add(std::move(row), pass);
    }
    return report;
}

Report lemmas(Options& options) {
    const std::string which = options.text("regime").value_or("");
    if (which.empty()) throw ConfigError("missing option regime (a regime name or all)");
    const double N = options.real("N", 1e5);
    const long samples = options.integer("samples", 10000);
    const std::uint64_t seed = options.seed();
    const std::optional<AbcdParams> params = coefficient_options(options);
    const bool all = which == "all";
    const std::vector<double> geometry_N = all ? options.reals("geometry_N", {17.0, 1000.0}) : std::vector<double>{};
    const int lattice = all ? positive_int(options, "lattice", 9) : 0;
    options.finish();
    if (samples < 1) throw ConfigError("samples must be positive");
    std::vector<IllposedRegime> regimes;
    if (all) {
        if (params) throw ConfigError("coefficients cannot be combined with regime=all");
        regimes.assign(kAllIllposedRegimes.begin(), kAllIllposedRegimes.end());
    } else {
        const auto regime = parse_illposed_regime(which);
        if (!regime) throw ConfigError("unknown regime '" + which + "'");
        regimes.push_back(*regime);
    }
    if (params) require_family(regimes.front(), *params);

    Report report("lemmas/1", {"regime", "N", "samples", "min_lhs", "bound", "violations"});
    for (std::size_t k = 0; k < regimes.size(); ++k) {
        // Each regime draws from its own stream so rows do not depend on which others run.
        const LemmaReport r = lemma_lower_bound_check(regimes[k], N, samples, seed + static_cast<std::uint64_t>(regimes[k]), params);
        report.add({std::string(to_string(r.regime)), format_number(r.N), std::to_string(r.samples),
                    format_number(r.min_lhs), format_number(r.bound_at_min), std::to_string(r.violations)},
                   r.violations == 0);
    }
    for (double gN : geometry_N) {
        const GeometryReport g = geometry_check_2d(gN, samples, seed, lattice);
        report.add({"geometry2d", format_number(g.N), std::to_string(g.samples),
                    format_number(std::min(-g.max_cos_beta, g.min_minus_p)), format_number(kGeometryBound),
                    std::to_string(g.violations)},
                   g.pass());
    }
    return report;
}

Report geometry(Options& options) {
    const std::vector<double> Ns = options.reals("N", {17.0, 1000.0});
    const long samples = options.integer("samples", 10000);
    const int lattice = positive_int(options, "lattice", 9);
    const std::uint64_t seed = options.seed();
    options.finish();
    if (samples < 0) throw ConfigError("samples must be non-negative");
    for (double N : Ns) {
        if (!(N > 0.0)) throw ConfigError("geometry needs N > 0");
    }
    Report report("geometry/1", {"N", "samples", "max_cos_beta", "min_minus_p", "violations"});
    for (double N : Ns) {
        const GeometryReport g = geometry_check_2d(N, samples, seed, lattice);
        report.add({format_number(g.N), std::to_string(g.samples), format_number(g.max_cos_beta),
                    format_number(g.min_minus_p), std::to_string(g.violations)},
                   g.pass());
    }
    return report;
}

Report schur(Options& options) {
    const std::vector<long> dims = options.integers("n", {1, 2});
    const std::optional<std::vector<double>> s_values =
        options.has("s") ? std::optional(options.reals("s", {})) : std::nullopt;
    const std::string which = options.text("case", "I");
    const double max_block = options.real("Nmax", 1048576.0);
    options.finish();
    std::vector<SchurCase> kinds;
    if (which == "I" || which == "both") kinds.push_back(SchurCase::HighLow);
    if (which == "II" || which == "both") kinds.push_back(SchurCase::HighHigh);
    if (kinds.empty()) throw ConfigError("case must be I, II or both");
    for (long n : dims) {
        if (n != 1 && n != 2) throw ConfigError("n must be 1 or 2");
    }

    Report report("schur/1", {"n", "s", "case", "Nmax", "sup_or_exponent", "bounded", "pass"});
    for (SchurCase kind : kinds) {
        for (long n : dims) {
            const double edge = 0.5 * static_cast<double>(n - 2);
            const std::vector<double> ss = s_values.value_or(std::vector<double>{edge - 0.5, edge, edge + 0.5});
            for (double s : ss) {
                const SchurResult r = schur_sum({static_cast<int>(n), s, max_block}, kind);
                // The sums are expected bounded exactly from s = (n - 2)/2 on; below
                // that, case I grows like N^{n - 2 - 2s}.
                const bool expect_bounded = s >= edge - 1e-12;
                bool pass = r.bounded == expect_bounded;
                if (!r.bounded && kind == SchurCase::HighLow) {
                    pass = pass && std::abs(r.growth_exponent - (n - 2.0 - 2.0 * s)) <= kSchurExponentTolerance;
                }
                report.add({std::to_string(n), format_number(s), std::string(to_string(kind)), format_number(max_block),
                            format_number(r.bounded ? r.sup : r.growth_exponent), format_flag(r.bounded),
                            format_flag(pass)},
                           pass);
            }
        }
    }
    return report;
}

Report bilinear_probe(Options& options) {
    const long n = options.integer("n", 1);
    if (n != 1 && n != 2) throw ConfigError("n must be 1 or 2");
    const double s = options.real("s", 0.0);
    const int points = positive_int(options, "points", n == 1 ? 1024 : 128);
    const double extent = positive_real(options, "extent", 8.0);
    const int trials = positive_int(options, "trials", n == 1 ? 200 : 40);
    const std::uint64_t seed = options.seed();
    options.finish();
    if (s < 0.5 * static_cast<double>(n - 2)) throw ConfigError("bilinear-probe needs s >= (n - 2)/2");

    Report report("bilinear-probe/1", {"n", "s", "points", "trials", "max_ratio", "mean_ratio", "low_block_max",
                                       "low_block_constant", "pass"});
    double previous = 0.0;
    for (int refine : {0, 1}) {
        const FrequencyGrid grid = periodic_grid(static_cast<int>(n), extent, points << refine);
        const ProbeReport probe = bilinear_ratio_probe(grid, s, trials, seed);
        std::seed_seq sequence{seed, static_cast<std::uint64_t>(refine)};
        std::mt19937_64 rng(sequence);
        double low_max = 0.0;
        for (int k = 0; k < trials; ++k) {
            const double band = 0.25 * grid.nyquist() * std::exp2(-(k % 4));
            low_max = std::max(low_max,
                               low_block_product_check(random_field(grid, band, rng), random_field(grid, band, rng)));
        }
        const double constant = low_block_constant(grid);
        bool pass = low_max <= constant;
        if (refine == 1) {
            pass = pass && std::abs(probe.max_ratio - previous) < kProbeRefinementTolerance * previous;
        }
        previous = probe.max_ratio;
        report.add({std::to_string(n), format_number(s), std::to_string(points << refine), std::to_string(trials),
                    format_number(probe.max_ratio), format_number(probe.mean_ratio), format_number(low_max),
                    format_number(constant), format_flag(pass)},
                   pass);
    }
    return report;
}

Report evolve_command(Options& options) {
    const IllposedRegime regime = regime_option(options);
    const int dimension = dimension_of(regime);
    const AbcdParams params = coefficient_options(options).value_or(default_params(regime));
    const std::string mode = options.text("mode", "trajectory");
    const int points = positive_int(options, "points", dimension == 1 ? 256 : 32);
    const double extent = positive_real(options, "extent", dimension == 1 ? 16.0 : 12.0);
    const double width = positive_real(options, "width", 1.5);
    if (mode == "picard") {
        const double amplitude = positive_real(options, "amplitude", 1.0);
        const double t = positive_real(options, "t", 0.1);
        const double lambda = positive_real(options, "lambda", 1e-2);
        const double dt = positive_real(options, "dt", 1e-2);
        const int time_order = positive_int(options, "time_order", 32);
        options.finish();
        const StateVector data = smooth_bump(periodic_grid(dimension, extent, points), amplitude, width);
        const PicardDefect d = picard_compare(data, params, t, lambda, dt, time_order);
        const bool pass = d.ratio >= kPicardRatioLow && d.ratio <= kPicardRatioHigh;
        Report report("evolve-picard/1", {"regime", "t", "lambda", "defect", "defect_half", "ratio", "pass"});
        report.add({std::string(to_string(regime)), format_number(t), format_number(lambda), format_number(d.defect),
                    format_number(d.defect_half), format_number(d.ratio), format_flag(pass)},
                   pass);
        return report;
    }
    if (mode != "trajectory") throw ConfigError("mode must be trajectory or picard");
    EvolveConfig config;
    config.params = params;
    config.dt = positive_real(options, "dt", 1e-2);
    config.T = positive_real(options, "T", 1.0);
    config.snapshot_every = positive_int(options, "snapshot_every", 10);
    config.quadratic = options.flag("quadratic", true);
    const double amplitude = positive_real(options, "amplitude", 0.05);
    options.finish();

    const Trajectory trajectory = evolve(smooth_bump(periodic_grid(dimension, extent, points), amplitude, width), config);
    Report report("evolve/1", {"t", "eta_norm", "velocity_norm", "energy", "curl_residual"});
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        const StateVector& state = trajectory.states[k];
        StateVector velocity = state;
        velocity.eta() = SpectralField::zeros(state.eta().grid);
        report.add({format_number(trajectory.times[k]), format_number(sobolev_norm(state.eta(), 0.0)),
                    format_number(state_norm(velocity)), format_number(energy(state, params)),
                    format_number(dimension == 2 ? curl_residual(state) : 0.0)});
    }
    return report;
}

Report energy_command(Options& options) {
    const long dimension = options.integer("dim", 1);
    if (dimension != 1 && dimension != 2) throw ConfigError("dim must be 1 or 2");
    const AbcdParams params =
        coefficient_options(options).value_or(AbcdParams(-1.0, 1.0, -1.0, 1.0, Regime::Generic));
    const int points = positive_int(options, "points", dimension == 1 ? 256 : 32);
    const double extent = positive_real(options, "extent", dimension == 1 ? 16.0 : 12.0);
    const double amplitude = positive_real(options, "amplitude", 0.05);
    const double width = positive_real(options, "width", 1.5);
    EvolveConfig config;
    config.params = params;
    config.dt = positive_real(options, "dt", 0.05);
    config.T = positive_real(options, "T", 5.0);
    config.snapshot_every = positive_int(options, "snapshot_every", 1);
    const bool refine = options.flag("refine", true);
    options.finish();

    const StateVector data = smooth_bump(periodic_grid(static_cast<int>(dimension), extent, points), amplitude, width);
    const std::vector<EnergySample> series = energy_series(evolve(data, config), params);
    // Conservation is only claimed when b = d.
    const bool conserved = params.b() == params.d();
    Report report("energy/1", {"t", "E", "relative_drift", "pass"});
    for (const EnergySample& sample : series) {
        const bool pass = !conserved || sample.relative_drift < kEnergyDriftTolerance;
        report.add({format_number(sample.t), format_number(sample.E), format_number(sample.relative_drift),
                    format_flag(pass)},
                   pass);
    }
    if (conserved && refine) {
        const double coarse = max_relative_drift(series);
        config.dt /= 2.0;
        const double fine = max_relative_drift(energy_series(evolve(data, config), params));
        if (coarse < kEnergyRefinementRatio * fine) {
            report.fail_summary("halving dt shrank the maximal drift only from " + format_number(coarse) + " to " +
                                format_number(fine));
        }
    }
    return report;
}

Report diag_check(Options& options) {
    const long samples = options.integer("samples", 10000);
    const int trials = positive_int(options, "trials", 3);
    const std::uint64_t seed = options.seed();
    options.finish();
    if (samples < 1) throw ConfigError("samples must be positive");

    Report report("diag-check/1", {"check", "regime", "dimension", "samples", "max_error", "tolerance", "pass"});
    std::vector<CheckResult> checks{diagonalization_check(samples, seed)};
    for (CheckResult& c : semigroup_checks(trials, seed + 1)) checks.push_back(std::move(c));
    for (const CheckResult& c : checks) {
        report.add({c.check, c.regime, std::to_string(c.dimension), std::to_string(c.samples),
                    format_number(c.max_error), format_number(c.tolerance), format_flag(c.pass())},
                   c.pass());
    }
    return report;
}

}  // namespace

std::span<const std::string_view> command_names() noexcept { return kCommands; }

Report run_command(std::string_view command, Options& options) {
    if (command == "sweep") return sweep(options);
    if (command == "lemmas") return lemmas(options);
    if (command == "geometry") return geometry(options);
    if (command == "schur") return schur(options);
    if (command == "bilinear-probe") return bilinear_probe(options);
    if (command == "evolve") return evolve_command(options);
    if (command == "energy") return energy_command(options);
    if (command == "diag-check") return diag_check(options);
    throw ConfigError("unknown command '" + std::string(command) + "'");
}

}  // namespace bq::lab

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "boussinesq/bilinear.hpp"
#include "boussinesq/diagnostics.hpp"
#include "boussinesq/errors.hpp"
#include "boussinesq/illposedness.hpp"
#include "boussinesq/solver.hpp"
#include "lab/lab.hpp"

namespace py = pybind11;
using namespace bq;

namespace {

/// The default periodic box: 256 points on [-16, 16) or 32^2 on [-12, 12)^2.
FrequencyGrid bump_grid(int dimension, int points, double extent) {
    if (points <= 0) points = dimension == 1 ? 256 : 32;
    if (extent <= 0.0) extent = dimension == 1 ? 16.0 : 12.0;
    return dimension == 1 ? FrequencyGrid::line(extent, points) : FrequencyGrid::plane(extent, points);
}

IllposedRegime regime_named(const std::string& name) {
    const auto regime = parse_illposed_regime(name);
    if (!regime) throw ConfigError("unknown regime '" + name + "'");
    return *regime;
}

SchurCase schur_case_named(const std::string& name) {
    if (name == "I") return SchurCase::HighLow;
    if (name == "II") return SchurCase::HighHigh;
    throw ConfigError("case must be 'I' or 'II'");
}

std::vector<EnergySample> bump_energy_series(int dimension, const AbcdParams& p, double dt, double T,
                                             double amplitude, double width, int points, double extent) {
    if (dimension != 1 && dimension != 2) throw ConfigError("dimension must be 1 or 2");
    const FrequencyGrid grid = bump_grid(dimension, points, extent);
    EvolveConfig config;
    config.params = p;
    config.dt = dt;
    config.T = T;
    config.snapshot_every = 1;
    return energy_series(evolve(smooth_bump(grid, amplitude, width), config), p);
}

PicardDefect bump_picard(const std::string& regime_name, double t, double lambda, double dt, int points,
                         double extent) {
    const IllposedRegime regime = regime_named(regime_name);
    const FrequencyGrid grid = bump_grid(dimension_of(regime), points, extent);
    return picard_compare(smooth_bump(grid, 1.0, 1.5), default_params(regime), t, lambda, dt);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral laboratory for the (abcd)-Boussinesq system";

    auto base = py::register_exception<Error>(m, "BoussinesqError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<RegimeError>(m, "RegimeError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<GridError>(m, "GridError", base.ptr());
    py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
    py::register_exception<AliasingError>(m, "AliasingError", base.ptr());
    py::register_exception<BlowUpError>(m, "BlowUpError", base.ptr());

    py::class_<AbcdParams>(m, "AbcdParams")
        .def(py::init(&AbcdParams::classified), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
             "Coefficients, classified into a dispersion regime; raises RegimeError otherwise.")
        .def_static("kdv_kdv", &AbcdParams::kdv_kdv)
        .def_static("bbm_bbm", &AbcdParams::bbm_bbm)
        .def_property_readonly("a", &AbcdParams::a)
        .def_property_readonly("b", &AbcdParams::b)
        .def_property_readonly("c", &AbcdParams::c)
        .def_property_readonly("d", &AbcdParams::d)
        .def_property_readonly("regime", [](const AbcdParams& p) { return std::string(to_string(p.regime())); })
        .def("__repr__", [](const AbcdParams& p) {
            std::ostringstream out;
            out << "AbcdParams(a=" << p.a() << ", b=" << p.b() << ", c=" << p.c() << ", d=" << p.d() << ")";
            return out.str();
        });

    m.def("dispersion", &eval_dispersion, py::arg("modulus"), py::arg("params"));
    m.def("h", &eval_h, py::arg("xi"), py::arg("params"));
    m.def("sigma", &eval_sigma, py::arg("xi"), py::arg("params"));
    m.def("propagator_1d", &propagator_1d, py::arg("xi"), py::arg("t"), py::arg("params"));
    m.def("propagator_2d", &propagator_2d, py::arg("xi"), py::arg("t"), py::arg("params"));

    m.def("regimes", [] {
        std::vector<std::string> out;
        for (IllposedRegime r : kAllIllposedRegimes) out.emplace_back(to_string(r));
        return out;
    });
    m.def("predicted_exponent", [](const std::string& r, double s) { return predicted_exponent(regime_named(r), s); },
          py::arg("regime"), py::arg("s"));
    m.def("critical_regularity", [](const std::string& r) { return critical_regularity(regime_named(r)); },
          py::arg("regime"));
    m.def("time_scale", [](const std::string& r, double N) { return time_scale(regime_named(r), N); },
          py::arg("regime"), py::arg("N"));

    py::class_<InflationPoint>(m, "InflationPoint")
        .def_readonly("N", &InflationPoint::N)
        .def_readonly("t", &InflationPoint::t)
        .def_readonly("norm", &InflationPoint::norm)
        .def_readonly("certificate", &InflationPoint::certificate);
    py::class_<InflationReport>(m, "InflationReport")
        .def_property_readonly("regime", [](const InflationReport& r) { return std::string(to_string(r.regime)); })
        .def_readonly("s", &InflationReport::s)
        .def_readonly("sprime", &InflationReport::sprime)
        .def_readonly("points", &InflationReport::points)
        .def_readonly("slope", &InflationReport::slope)
        .def_readonly("predicted", &InflationReport::predicted)
        .def_readonly("max_certificate", &InflationReport::max_certificate)
        .def_readonly("passed", &InflationReport::pass);
    m.def(
        "inflation_sweep",
        [](const std::string& r, double s, double sprime, const std::vector<double>& Ns) {
            py::gil_scoped_release release;
            return inflation_sweep(regime_named(r), s, sprime, Ns);
        },
        py::arg("regime"), py::arg("s"), py::arg("sprime") = 0.0,
        py::arg("Ns") = std::vector<double>{128.0, 256.0, 512.0, 1024.0});

    py::class_<LemmaReport>(m, "LemmaReport")
        .def_property_readonly("regime", [](const LemmaReport& r) { return std::string(to_string(r.regime)); })
        .def_readonly("N", &LemmaReport::N)
        .def_readonly("samples", &LemmaReport::samples)
        .def_readonly("min_lhs", &LemmaReport::min_lhs)
        .def_readonly("bound_at_min", &LemmaReport::bound_at_min)
        .def_readonly("min_margin", &LemmaReport::min_margin)
        .def_readonly("violations", &LemmaReport::violations);
    m.def(
        "lemma_check",
        [](const std::string& r, std::uint64_t seed, double N, long samples) {
            return lemma_lower_bound_check(regime_named(r), N, samples, seed);
        },
        py::arg("regime"), py::kw_only(), py::arg("seed"), py::arg("N") = 1e5, py::arg("samples") = 10000);

    py::class_<GeometryReport>(m, "GeometryReport")
        .def_readonly("N", &GeometryReport::N)
        .def_readonly("samples", &GeometryReport::samples)
        .def_readonly("max_cos_beta", &GeometryReport::max_cos_beta)
        .def_readonly("min_minus_p", &GeometryReport::min_minus_p)
        .def_readonly("violations", &GeometryReport::violations);
    m.def("geometry_check", &geometry_check_2d, py::arg("N"), py::arg("samples"), py::arg("seed"),
          py::arg("lattice") = 9);

    py::class_<SchurResult>(m, "SchurResult")
        .def_property_readonly("case", [](const SchurResult& r) { return std::string(to_string(r.kind)); })
        .def_readonly("outer", &SchurResult::outer)
        .def_readonly("partial", &SchurResult::partial)
        .def_readonly("sup", &SchurResult::sup)
        .def_readonly("relative_change", &SchurResult::relative_change)
        .def_readonly("bounded", &SchurResult::bounded)
        .def_readonly("growth_exponent", &SchurResult::growth_exponent);
    m.def(
        "schur_sum",
        [](int n, double s, const std::string& kind, double max_block) {
            return schur_sum({n, s, max_block}, schur_case_named(kind));
        },
        py::arg("n"), py::arg("s"), py::arg("case") = "I", py::arg("max_block") = 1048576.0);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("check", &CheckResult::check)
        .def_readonly("regime", &CheckResult::regime)
        .def_readonly("dimension", &CheckResult::dimension)
        .def_readonly("samples", &CheckResult::samples)
        .def_readonly("max_error", &CheckResult::max_error)
        .def_readonly("tolerance", &CheckResult::tolerance)
        .def_property_readonly("passed", &CheckResult::pass);
    m.def("diagonalization_check", &diagonalization_check, py::arg("samples"), py::arg("seed"));
    m.def("semigroup_checks", &semigroup_checks, py::arg("trials"), py::arg("seed"));

    py::class_<EnergySample>(m, "EnergySample")
        .def_readonly("t", &EnergySample::t)
        .def_readonly("E", &EnergySample::E)
        .def_readonly("relative_drift", &EnergySample::relative_drift);
    m.def("energy_series", &bump_energy_series,
          "Energy along the evolution of a Gaussian bump on a periodic grid.", py::arg("dimension"),
          py::arg("params"), py::arg("dt") = 0.05, py::arg("T") = 5.0, py::arg("amplitude") = 0.05,
          py::arg("width") = 1.5, py::arg("points") = 0, py::arg("extent") = 0.0);

    py::class_<PicardDefect>(m, "PicardDefect")
        .def_readonly("amplitude", &PicardDefect::amplitude)
        .def_readonly("defect", &PicardDefect::defect)
        .def_readonly("defect_half", &PicardDefect::defect_half)
        .def_readonly("ratio", &PicardDefect::ratio);
    m.def("picard_defect", &bump_picard, py::arg("regime"), py::arg("t") = 0.1, py::arg("amplitude") = 1e-2,
          py::arg("dt") = 0.01, py::arg("points") = 0, py::arg("extent") = 0.0);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = lab::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        "Runs a boussinesq_lab command; returns (exit_code, stdout, stderr).", py::arg("args"));
}

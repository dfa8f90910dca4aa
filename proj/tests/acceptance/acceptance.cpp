// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "boussinesq/bilinear.hpp"
#include "boussinesq/diagnostics.hpp"
#include "boussinesq/illposedness.hpp"
#include "boussinesq/solver.hpp"

using namespace bq;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Limits {
    static constexpr double diagonalization_error = 1e-12;
    static constexpr double diagonalization_seconds = 5.0;
    static constexpr double semigroup_error = 1e-12;
    static constexpr double semigroup_seconds = 30.0;
    static constexpr double lemma_N = 1e5;
    static constexpr long lemma_samples = 10000;
    static constexpr double lemma_seconds = 120.0;
    static constexpr double slope_tolerance = 0.15;
    static constexpr double certificate = 1e-4;
    static constexpr double sweep_seconds = 600.0;
    static constexpr double flat_slope = 0.2;
    static constexpr double support_deficit = 1e-12;
    static constexpr double schur_max_block = 1048576.0;
    static constexpr double schur_change = 1e-3;
    static constexpr double schur_exponent = 0.1;
    static constexpr double schur_seconds = 60.0;
    static constexpr double energy_drift = 1e-6;
    static constexpr double energy_shrink = 8.0;
    static constexpr double energy_seconds = 120.0;
    static constexpr double picard_low = 6.0;
    static constexpr double picard_high = 10.0;
    static constexpr double picard_seconds = 120.0;
};

const std::vector<double> kSweepNs{128.0, 256.0, 512.0, 1024.0};

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string number(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3g", x);
    return buffer;
}

bool report(int id, const std::string& title, const std::function<void(Verdict&)>& body) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d %s: %s;%s (%.2f s)\n", id, v.pass ? "PASS" : "FAIL", title.c_str(),
                v.detail.str().c_str(), seconds_since(start));
    std::fflush(stdout);
    return v.pass;
}

void diagonalization(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    const CheckResult r = diagonalization_check(10000, kSeed);
    const double elapsed = seconds_since(start);
    v.detail << " max residual " << number(r.max_error) << " over " << r.samples << " samples";
    v.require(r.max_error < Limits::diagonalization_error, "residual");
    v.require(elapsed < Limits::diagonalization_seconds, "runtime");
}

void semigroup(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    const std::vector<CheckResult> checks = semigroup_checks(3, kSeed);
    for (const CheckResult& c : checks) {
        worst = std::max(worst, c.max_error);
        v.require(c.max_error < Limits::semigroup_error, c.check + " " + c.regime + " " + std::to_string(c.dimension) + "D");
    }
    v.detail << " " << checks.size() << " checks, max error " << number(worst);
    v.require(seconds_since(start) < Limits::semigroup_seconds, "runtime");
}

void lemmas(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    for (IllposedRegime regime : kAllIllposedRegimes) {
        const LemmaReport r = lemma_lower_bound_check(regime, Limits::lemma_N, Limits::lemma_samples, kSeed);
        v.detail << " " << to_string(regime) << " violations " << r.violations;
        v.require(r.violations == 0 && r.samples == Limits::lemma_samples, std::string(to_string(regime)));
    }
    for (double N : {17.0, 1000.0}) {
        const GeometryReport g = geometry_check_2d(N, 10000, kSeed, 9);
        v.detail << " | N=" << N << " max cos(beta) " << number(g.max_cos_beta) << " min -p " << number(g.min_minus_p);
        v.require(g.max_cos_beta <= -0.75 && g.min_minus_p >= 0.75 && g.pass(), "geometry at N=" + number(N));
    }
    v.require(seconds_since(start) < Limits::lemma_seconds, "runtime");
}

struct SweepCase {
    IllposedRegime regime;
    double s;
};

void slopes(Verdict& v) {
    for (const SweepCase& c : {SweepCase{IllposedRegime::Gen1D, -1.0}, SweepCase{IllposedRegime::KdV1D, -2.0},
                               SweepCase{IllposedRegime::Gen2D, -1.0}, SweepCase{IllposedRegime::KdV2D, -2.0},
                               SweepCase{IllposedRegime::BBM2D, -0.5}}) {
        const auto start = std::chrono::steady_clock::now();
        const InflationReport r = inflation_sweep(c.regime, c.s, 0.0, kSweepNs);
        const double elapsed = seconds_since(start);
        const std::string name(to_string(c.regime));
        v.detail << " " << name << " slope " << number(r.slope) << " cert " << number(r.max_certificate);
        v.require(std::abs(r.predicted - 1.0) < 1e-12, name + " prediction");
        v.require(std::abs(r.slope - r.predicted) <= Limits::slope_tolerance, name + " slope");
        v.require(r.max_certificate < Limits::certificate, name + " certificate");
        v.require(elapsed < Limits::sweep_seconds, name + " runtime");
    }
}

void thresholds(Verdict& v) {
    for (IllposedRegime regime : kAllIllposedRegimes) {
        const InflationReport r = inflation_sweep(regime, critical_regularity(regime), 0.0, kSweepNs);
        const std::string name(to_string(regime));
        v.detail << " " << name << " (s=" << number(critical_regularity(regime)) << ") slope " << number(r.slope);
        v.require(std::abs(r.slope) <= Limits::flat_slope, name);
    }
}

void supports(Verdict& v) {
    for (IllposedRegime regime : kAllIllposedRegimes) {
        const int dim = dimension_of(regime);
        const double N = dim == 1 ? 128.0 : 64.0;
        // Lattice spacing 1/4 places every support edge on a lattice point.
        const double extent = 4.0 * std::numbers::pi;
        const int points = static_cast<int>(std::bit_ceil(static_cast<unsigned>(32.0 * N)));
        const FrequencyGrid grid =
            dim == 1 ? FrequencyGrid::line(extent, points) : FrequencyGrid::plane(extent, points, 32);
        const LocalizedData data = build_data(regime, N, -1.0, grid);
        const double fraction = support_fraction(picard_a2(data, time_scale(regime, N), 8), data);
        v.detail << " " << to_string(regime) << " deficit " << number(1.0 - fraction);
        v.require(fraction >= 1.0 - Limits::support_deficit, std::string(to_string(regime)));
    }
}

void schur(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    for (int n : {1, 2}) {
        const double edge = 0.5 * (n - 2);
        for (double s : {edge, edge + 0.5}) {
            const SchurResult r = schur_sum({n, s, Limits::schur_max_block}, SchurCase::HighLow);
            v.detail << " n=" << n << " s=" << number(s) << " change " << number(r.relative_change);
            v.require(r.relative_change < Limits::schur_change, "bounded at n=" + std::to_string(n) + " s=" + number(s));
        }
        const double below = edge - 0.5;
        const SchurResult r = schur_sum({n, below, Limits::schur_max_block}, SchurCase::HighLow);
        v.detail << " n=" << n << " s=" << number(below) << " exponent " << number(r.growth_exponent);
        v.require(std::abs(r.growth_exponent - (n - 2.0 - 2.0 * below)) <= Limits::schur_exponent,
                  "growth at n=" + std::to_string(n));
    }
    v.require(seconds_since(start) < Limits::schur_seconds, "runtime");
}

void energy_conservation(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    const AbcdParams p(-1.0, 1.0, -1.0, 1.0, Regime::Generic);
    for (int dim : {1, 2}) {
        const FrequencyGrid grid = dim == 1 ? FrequencyGrid::line(16.0, 256) : FrequencyGrid::plane(12.0, 32);
        const StateVector data = smooth_bump(grid, 0.05, 1.5);
        EvolveConfig config;
        config.params = p;
        config.T = 5.0;
        config.snapshot_every = 1;
        config.dt = 0.1;
        const double coarse = max_relative_drift(energy_series(evolve(data, config), p));
        config.dt = 0.05;
        const double fine = max_relative_drift(energy_series(evolve(data, config), p));
        v.detail << " " << dim << "D drift " << number(coarse) << " -> " << number(fine);
        v.require(coarse < Limits::energy_drift && fine < Limits::energy_drift, std::to_string(dim) + "D drift");
        v.require(coarse >= Limits::energy_shrink * fine, std::to_string(dim) + "D shrink");
    }
    v.require(seconds_since(start) < Limits::energy_seconds, "runtime");
}

void picard(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    const PicardDefect one = picard_compare(smooth_bump(FrequencyGrid::line(16.0, 256), 1.0, 1.5),
                                            default_params(IllposedRegime::Gen1D), 0.1, 1e-2, 0.01);
    const PicardDefect two = picard_compare(smooth_bump(FrequencyGrid::plane(12.0, 32), 1.0, 1.5),
                                            default_params(IllposedRegime::BBM2D), 0.1, 1e-2, 0.01);
    v.detail << " gen1d ratio " << number(one.ratio) << " bbm2d ratio " << number(two.ratio);
    v.require(one.ratio >= Limits::picard_low && one.ratio <= Limits::picard_high, "gen1d");
    v.require(two.ratio >= Limits::picard_low && two.ratio <= Limits::picard_high, "bbm2d");
    v.require(seconds_since(start) < Limits::picard_seconds, "runtime");
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism(Verdict& v, const std::string& executable) {
    const fs::path dir = fs::temp_directory_path() / "bq_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::vector<std::string> commands{"lemmas regime=all samples=2000 seed=7",
                                            "geometry N=17,1000 samples=2000 seed=7",
                                            "bilinear-probe n=1 trials=20 seed=7",
                                            "diag-check samples=1000 seed=7"};
    for (std::size_t k = 0; k < commands.size(); ++k) {
        std::string first;
        for (int run = 0; run < 2; ++run) {
            const fs::path out = dir / ("run" + std::to_string(k) + "_" + std::to_string(run) + ".csv");
            const std::string line = "\"" + executable + "\" " + commands[k] + " out=\"" + out.string() + "\"";
            const int status = std::system(line.c_str());
            v.require(status == 0, "exit status of: " + commands[k]);
            const std::string bytes = slurp(out);
            v.require(!bytes.empty(), "output of: " + commands[k]);
            if (run == 0) first = bytes;
            else v.require(bytes == first, "identical bytes for: " + commands[k]);
        }
    }
    v.detail << " " << commands.size() << " commands run twice";
    fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <path to boussinesq_lab>\n", argv[0]);
        return 1;
    }
    const std::string executable = argv[1];
    bool all = true;
    all &= report(1, "diagonalization residuals", diagonalization);
    all &= report(2, "semigroup laws", semigroup);
    all &= report(3, "lemma bounds and geometry", lemmas);
    all &= report(4, "norm-inflation slopes", slopes);
    all &= report(5, "threshold flatness", thresholds);
    all &= report(6, "support of the second iterate", supports);
    all &= report(7, "Schur dichotomy", schur);
    all &= report(8, "energy conservation", energy_conservation);
    all &= report(9, "Picard-series order", picard);
    all &= report(10, "CLI determinism", [&](Verdict& v) { determinism(v, executable); });
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}

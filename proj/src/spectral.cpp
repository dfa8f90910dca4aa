#include "boussinesq/spectral.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <sstream>

#include "boussinesq/errors.hpp"
#include "detail/fft.hpp"

namespace bq {
namespace {

using std::numbers::pi;

bool power_of_two(int n) { return n > 0 && std::has_single_bit(static_cast<unsigned>(n)); }

void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid)) throw GridError("fields live on different grids");
}

int axis_points(const FrequencyGrid& g, int axis) { return g.dimension() == 1 && axis == 1 ? 1 : g.points(axis); }

}  // namespace

FrequencyGrid::FrequencyGrid(int dimension, double extent, std::array<int, 2> points)
    : dim_(dimension), extent_(extent), points_(points) {
    if (dimension != 1 && dimension != 2) throw GridError("grid dimension must be 1 or 2");
    if (!(extent > 0.0)) throw GridError("grid extent must be positive");
    if (dimension == 1) points_[1] = 1;
    for (int axis = 0; axis < dimension; ++axis) {
        if (!power_of_two(points_[axis]) || points_[axis] < 8) {
            std::ostringstream os;
            os << "points per axis must be a power of two >= 8, got " << points_[axis];
            throw GridError(os.str());
        }
    }
}

FrequencyGrid FrequencyGrid::line(double extent, int points) { return FrequencyGrid(1, extent, {points, 1}); }

FrequencyGrid FrequencyGrid::plane(double extent, int points_x, int points_y) {
    return FrequencyGrid(2, extent, {points_x, points_y});
}

double FrequencyGrid::spacing() const noexcept { return pi / extent_; }

double FrequencyGrid::cell(int axis) const noexcept { return 2.0 * extent_ / points_[axis]; }

double FrequencyGrid::lattice_measure() const noexcept { return dim_ == 1 ? spacing() : spacing() * spacing(); }

double FrequencyGrid::cell_volume() const noexcept { return dim_ == 1 ? cell(0) : cell(0) * cell(1); }

double FrequencyGrid::nyquist(int axis) const noexcept { return 0.5 * points_[axis] * spacing(); }

double FrequencyGrid::nyquist() const noexcept {
    return dim_ == 1 ? nyquist(0) : std::min(nyquist(0), nyquist(1));
}

int FrequencyGrid::wavenumber(int axis, int index) const noexcept {
    const int m = points_[axis];
    return index < m / 2 ? index : index - m;
}

int FrequencyGrid::mirror(int axis, int index) const noexcept {
    const int m = points_[axis];
    return (m - index) % m;
}

std::array<long, 2> FrequencyGrid::wavenumbers(std::size_t flat) const noexcept {
    if (dim_ == 1) return {wavenumber(0, static_cast<int>(flat)), 0};
    const auto m1 = static_cast<std::size_t>(points_[1]);
    return {wavenumber(0, static_cast<int>(flat / m1)), wavenumber(1, static_cast<int>(flat % m1))};
}

Vec2 FrequencyGrid::frequency(std::size_t flat) const noexcept {
    const auto k = wavenumbers(flat);
    const double dk = spacing();
    return {dk * static_cast<double>(k[0]), dk * static_cast<double>(k[1])};
}

double FrequencyGrid::modulus(std::size_t flat) const noexcept {
    const Vec2 xi = frequency(flat);
    return std::hypot(xi[0], xi[1]);
}

std::size_t FrequencyGrid::mirror(std::size_t flat) const noexcept {
    if (dim_ == 1) return static_cast<std::size_t>(mirror(0, static_cast<int>(flat)));
    const auto m1 = static_cast<std::size_t>(points_[1]);
    const auto i0 = static_cast<std::size_t>(mirror(0, static_cast<int>(flat / m1)));
    const auto i1 = static_cast<std::size_t>(mirror(1, static_cast<int>(flat % m1)));
    return i0 * m1 + i1;
}

std::size_t FrequencyGrid::index_of(std::array<long, 2> k) const noexcept {
    std::array<std::size_t, 2> idx{0, 0};
    for (int axis = 0; axis < dim_; ++axis) {
        const long m = points_[axis];
        if (k[axis] < -m / 2 || k[axis] >= m / 2) return size();
        idx[axis] = static_cast<std::size_t>(k[axis] < 0 ? k[axis] + m : k[axis]);
    }
    return idx[0] * static_cast<std::size_t>(points_[1]) + idx[1];
}

// ---------------------------------------------------------------------------

SpectralField SpectralField::zeros(const FrequencyGrid& grid) {
    return SpectralField{grid, std::vector<cplx>(grid.size(), cplx{0.0, 0.0})};
}

SpectralField& SpectralField::operator+=(const SpectralField& other) { return axpy(1.0, other); }

SpectralField& SpectralField::operator-=(const SpectralField& other) { return axpy(-1.0, other); }

SpectralField& SpectralField::operator*=(cplx factor) {
    for (auto& c : coeffs) c *= factor;
    return *this;
}

SpectralField& SpectralField::axpy(cplx factor, const SpectralField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += factor * other.coeffs[i];
    return *this;
}

SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
SpectralField operator*(cplx factor, SpectralField f) { return f *= factor; }

PhysicalField to_physical(const SpectralField& f) {
    if (f.coeffs.size() != f.grid.size()) throw GridError("coefficient count does not match grid");
    PhysicalField out{f.grid, std::vector<cplx>(f.grid.size())};
    detail::fft(f.coeffs, out.values, f.grid.points(0), axis_points(f.grid, 1), detail::FftSign::Backward);
    const double scale = 1.0 / std::pow(2.0 * f.grid.extent(), f.grid.dimension());
    for (auto& v : out.values) v *= scale;
    return out;
}

SpectralField to_spectral(const PhysicalField& f) {
    if (f.values.size() != f.grid.size()) throw GridError("sample count does not match grid");
    SpectralField out{f.grid, std::vector<cplx>(f.grid.size())};
    detail::fft(f.values, out.coeffs, f.grid.points(0), axis_points(f.grid, 1), detail::FftSign::Forward);
    const double scale = f.grid.cell_volume();
    for (auto& c : out.coeffs) c *= scale;
    return out;
}

double sobolev_norm(const SpectralField& f, double s) {
    return weighted_norm(f, [s](const Vec2& xi) {
        return std::pow(1.0 + xi[0] * xi[0] + xi[1] * xi[1], 0.5 * s);
    });
}

double lp_norm(const PhysicalField& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw DomainError("L^p norm requires p >= 1");
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.grid.cell_volume(), 1.0 / p);
}

double conjugate_symmetry_residual(const SpectralField& f) {
    double scale = 0.0;
    double residual = 0.0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        scale = std::max(scale, std::abs(f.coeffs[i]));
        residual = std::max(residual, std::abs(f.coeffs[f.grid.mirror(i)] - std::conj(f.coeffs[i])));
    }
    return scale > 0.0 ? residual / scale : 0.0;
}

double imaginary_residual(const PhysicalField& f) {
    double scale = 0.0;
    double imag = 0.0;
    for (const auto& v : f.values) {
        scale = std::max(scale, std::abs(v));
        imag = std::max(imag, std::abs(v.imag()));
    }
    return scale > 0.0 ? imag / scale : 0.0;
}

SpectralField exact_product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f, g);
    const FrequencyGrid& grid = f.grid;
    const int dim = grid.dimension();
    const FrequencyGrid padded(dim, grid.extent(), {2 * grid.points(0), dim == 1 ? 1 : 2 * grid.points(1)});

    auto embed = [&](const SpectralField& src) {
        SpectralField dst = SpectralField::zeros(padded);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            dst.coeffs[padded.index_of(grid.wavenumbers(i))] = src.coeffs[i];
        }
        return dst;
    };

    PhysicalField pf = to_physical(embed(f));
    const PhysicalField pg = to_physical(embed(g));
    for (std::size_t i = 0; i < pf.values.size(); ++i) pf.values[i] *= pg.values[i];
    const SpectralField full = to_spectral(pf);

    SpectralField out = SpectralField::zeros(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.coeffs[i] = full.coeffs[padded.index_of(grid.wavenumbers(i))];
    }
    return out;
}

bool dealias_retained(const FrequencyGrid& grid, std::size_t flat, double fraction) noexcept {
    const auto k = grid.wavenumbers(flat);
    for (int axis = 0; axis < grid.dimension(); ++axis) {
        if (static_cast<double>(std::abs(k[axis])) > fraction * 0.5 * grid.points(axis)) return false;
    }
    return true;
}

void dealias(SpectralField& f, double fraction) {
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (!dealias_retained(f.grid, i, fraction)) f.coeffs[i] = 0.0;
    }
}

double dealias_leakage(const SpectralField& f, double fraction) {
    double total = 0.0;
    double outside = 0.0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        const double m = std::norm(f.coeffs[i]);
        total += m;
        if (!dealias_retained(f.grid, i, fraction)) outside += m;
    }
    return total > 0.0 ? outside / total : 0.0;
}

SpectralField truncated_product(const SpectralField& f, const SpectralField& g, double fraction) {
    require_same_grid(f, g);
    PhysicalField pf = to_physical(f);
    const PhysicalField pg = to_physical(g);
    for (std::size_t i = 0; i < pf.values.size(); ++i) pf.values[i] *= pg.values[i];
    SpectralField out = to_spectral(pf);
    dealias(out, fraction);
    return out;
}

SpectralField random_field(const FrequencyGrid& grid, double max_modulus, std::mt19937_64& rng, bool real) {
    std::normal_distribution<double> normal(0.0, 1.0);
    SpectralField f = SpectralField::zeros(grid);
    auto is_nyquist = [&](std::size_t i) {
        const auto k = grid.wavenumbers(i);
        for (int axis = 0; axis < grid.dimension(); ++axis) {
            if (k[axis] == -grid.points(axis) / 2) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        if (!is_nyquist(i) && grid.modulus(i) <= max_modulus) f.coeffs[i] = {re, im};
    }
    if (!real) return f;
    SpectralField sym = SpectralField::zeros(grid);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        sym.coeffs[i] = 0.5 * (f.coeffs[i] + std::conj(f.coeffs[grid.mirror(i)]));
    }
    return sym;
}

// ---------------------------------------------------------------------------

double lp_bump(double r) noexcept {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double c = std::cos(0.5 * pi * (r - 1.0));
    return c * c;
}

double lp_weight(double modulus, double block) noexcept {
    if (block <= 1.0) return lp_bump(modulus);
    return lp_bump(modulus / block) - lp_bump(2.0 * modulus / block);
}

bool is_dyadic(double block) noexcept {
    if (!(block >= 1.0) || !std::isfinite(block)) return false;
    int exponent = 0;
    const double mantissa = std::frexp(block, &exponent);
    return mantissa == 0.5;
}

double max_block(const FrequencyGrid& grid) {
    const double limit = 0.5 * grid.nyquist();
    if (limit < 1.0) throw GridError("grid too coarse for any Littlewood-Paley block");
    return std::exp2(std::floor(std::log2(limit)));
}

SpectralField lp_project(const SpectralField& f, double block) {
    if (!is_dyadic(block)) throw GridError("Littlewood-Paley block must be a power of two");
    if (block > 0.5 * f.grid.nyquist()) {
        std::ostringstream os;
        os << "block " << block << " exceeds Nyquist/2 = " << 0.5 * f.grid.nyquist();
        throw GridError(os.str());
    }
    SpectralField out = f;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] *= lp_weight(f.grid.modulus(i), block);
    return out;
}

SpectralField LPDecomposition::sum() const {
    if (blocks.empty()) throw GridError("empty decomposition");
    SpectralField total = SpectralField::zeros(blocks.front().field.grid);
    for (const auto& b : blocks) total += b.field;
    return total;
}

LPDecomposition lp_decompose(const SpectralField& f) {
    const double top = max_block(f.grid);
    LPDecomposition out{{}, top};
    for (double n = 1.0; n <= top; n *= 2.0) out.blocks.push_back({n, lp_project(f, n)});
    return out;
}

double partition_defect(const FrequencyGrid& grid) {
    const double top = max_block(grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.modulus(i);
        if (r > top) continue;
        double total = 0.0;
        for (double n = 1.0; n <= top; n *= 2.0) total += lp_weight(r, n);
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return worst;
}

double bernstein_derivative_ratio(const LPBlock& block, double p, double s) {
    const SpectralField& f = block.field;
    SpectralField derivative = f;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i] == cplx{0.0, 0.0}) continue;
        const double r = f.grid.modulus(i);
        if (r == 0.0 && s < 0.0) throw DomainError("negative-order derivative of a block containing xi = 0");
        derivative.coeffs[i] *= r == 0.0 ? 0.0 : std::pow(r, s);
    }
    const double base = lp_norm(to_physical(f), p);
    if (!(base > 0.0)) throw GridError("empty Littlewood-Paley block");
    return lp_norm(to_physical(derivative), p) / (std::pow(block.block, s) * base);
}

double bernstein_embedding_ratio(const LPBlock& block, double p, double q) {
    const PhysicalField phys = to_physical(block.field);
    const double base = lp_norm(phys, p);
    if (!(base > 0.0)) throw GridError("empty Littlewood-Paley block");
    return lp_norm(phys, q) / base;
}

}  // namespace bq

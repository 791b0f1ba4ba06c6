#include "tfch/spectral_field.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace tfch {

void Grid::validate() const {
    if (nx <= 0 || ny <= 0 || nx % 2 != 0 || ny % 2 != 0)
        throw std::invalid_argument("grid: nx and ny must be positive even integers");
    if (!(lx > 0.0) || !(ly > 0.0))
        throw std::invalid_argument("grid: domain lengths must be positive");
}

Field::Field(const Grid& grid, double fill) : grid_(grid) {
    grid_.validate();
    values_.assign(grid_.node_count(), fill);
}

Field::Field(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.node_count())
        throw std::invalid_argument("field: value count does not match grid");
}

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b))
        throw std::invalid_argument("fields live on different grids");
}

} // namespace

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a.grid(), b.grid());
    Field out = a;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += b[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a.grid(), b.grid());
    Field out = a;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] -= b[i];
    return out;
}

Field operator*(double s, const Field& f) {
    Field out = f;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] *= s;
    return out;
}

SpectralField::SpectralField(const Grid& grid, std::vector<std::complex<double>> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    grid_.validate();
    if (coeffs_.size() != grid_.spectral_size())
        throw std::invalid_argument("spectral field: coefficient count does not match grid");
}

namespace {

// One set of FFTW plans and scratch buffers per grid resolution. Plans are
// created with FFTW_ESTIMATE so the chosen algorithm (and hence roundoff)
// is reproducible run to run.
struct Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    std::mutex mu;

    ~Plans() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (rbuf) fftw_free(rbuf);
        if (cbuf) fftw_free(cbuf);
    }
};

Plans& plans_for(const Grid& grid) {
    static std::mutex table_mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Plans>> table;
    std::scoped_lock lock(table_mu);
    auto key = std::make_pair(grid.nx, grid.ny);
    auto it = table.find(key);
    if (it == table.end()) {
        auto p = std::make_unique<Plans>();
        p->rbuf = fftw_alloc_real(grid.node_count());
        p->cbuf = fftw_alloc_complex(grid.spectral_size());
        p->fwd = fftw_plan_dft_r2c_2d(grid.nx, grid.ny, p->rbuf, p->cbuf, FFTW_ESTIMATE);
        p->bwd = fftw_plan_dft_c2r_2d(grid.nx, grid.ny, p->cbuf, p->rbuf, FFTW_ESTIMATE);
        if (!p->fwd || !p->bwd)
            throw std::runtime_error("fftw plan creation failed");
        it = table.emplace(key, std::move(p)).first;
    }
    return *it->second;
}

} // namespace

void transform_forward(const Grid& grid, std::span<const double> values,
                       std::span<std::complex<double>> coeffs) {
    grid.validate();
    if (values.size() != grid.node_count() || coeffs.size() != grid.spectral_size())
        throw std::invalid_argument("transform_forward: buffer sizes do not match grid");
    Plans& p = plans_for(grid);
    std::scoped_lock lock(p.mu);
    std::memcpy(p.rbuf, values.data(), values.size() * sizeof(double));
    fftw_execute(p.fwd);
    const double scale = 1.0 / static_cast<double>(grid.node_count());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        coeffs[i] = std::complex<double>(p.cbuf[i][0] * scale, p.cbuf[i][1] * scale);
}

void transform_inverse(const Grid& grid, std::span<const std::complex<double>> coeffs,
                       std::span<double> values) {
    grid.validate();
    if (values.size() != grid.node_count() || coeffs.size() != grid.spectral_size())
        throw std::invalid_argument("transform_inverse: buffer sizes do not match grid");
    Plans& p = plans_for(grid);
    std::scoped_lock lock(p.mu);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        p.cbuf[i][0] = coeffs[i].real();
        p.cbuf[i][1] = coeffs[i].imag();
    }
    fftw_execute(p.bwd);
    std::memcpy(values.data(), p.rbuf, values.size() * sizeof(double));
}

SpectralField to_spectral(const Field& f) {
    std::vector<std::complex<double>> coeffs(f.grid().spectral_size());
    transform_forward(f.grid(), f.values(), coeffs);
    return SpectralField(f.grid(), std::move(coeffs));
}

Field from_spectral(const SpectralField& f) {
    Field out(f.grid());
    transform_inverse(f.grid(), f.coeffs(), out.values());
    return out;
}

namespace {

double kappa_x(const Grid& grid, int ix) {
    const int sx = ix <= grid.nx / 2 ? ix : ix - grid.nx;
    return 2.0 * std::numbers::pi * sx / grid.lx;
}

double kappa_y(const Grid& grid, int iy) {
    return 2.0 * std::numbers::pi * iy / grid.ly;
}

} // namespace

std::vector<double> laplacian_symbols(const Grid& grid) {
    grid.validate();
    std::vector<double> k2(grid.spectral_size());
    const int nyh = grid.ny / 2 + 1;
    for (int ix = 0; ix < grid.nx; ++ix) {
        const double kx = kappa_x(grid, ix);
        for (int iy = 0; iy < nyh; ++iy) {
            const double ky = kappa_y(grid, iy);
            k2[static_cast<std::size_t>(ix) * nyh + iy] = kx * kx + ky * ky;
        }
    }
    return k2;
}

std::vector<double> gradient_symbols_x(const Grid& grid) {
    grid.validate();
    std::vector<double> g(grid.spectral_size());
    const int nyh = grid.ny / 2 + 1;
    for (int ix = 0; ix < grid.nx; ++ix) {
        const double kx = ix == grid.nx / 2 ? 0.0 : kappa_x(grid, ix);
        for (int iy = 0; iy < nyh; ++iy)
            g[static_cast<std::size_t>(ix) * nyh + iy] = kx;
    }
    return g;
}

std::vector<double> gradient_symbols_y(const Grid& grid) {
    grid.validate();
    std::vector<double> g(grid.spectral_size());
    const int nyh = grid.ny / 2 + 1;
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < nyh; ++iy)
            g[static_cast<std::size_t>(ix) * nyh + iy] = iy == grid.ny / 2 ? 0.0 : kappa_y(grid, iy);
    return g;
}

std::vector<double> parseval_weights(const Grid& grid) {
    grid.validate();
    std::vector<double> w(grid.spectral_size());
    const int nyh = grid.ny / 2 + 1;
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < nyh; ++iy)
            w[static_cast<std::size_t>(ix) * nyh + iy] = (iy == 0 || iy == grid.ny / 2) ? 1.0 : 2.0;
    return w;
}

Field laplacian(const Field& f) {
    auto hat = to_spectral(f);
    const auto k2 = laplacian_symbols(f.grid());
    auto& c = hat.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] *= -k2[i];
    return from_spectral(hat);
}

Field neg_inv_laplacian(const Field& f) {
    const double m = mean(f);
    if (std::abs(m) > 1e-12 * l2_norm(f))
        throw std::invalid_argument("neg_inv_laplacian: input has nonzero mean");
    auto hat = to_spectral(f);
    const auto k2 = laplacian_symbols(f.grid());
    auto& c = hat.coeffs();
    c[0] = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i)
        c[i] /= k2[i];
    return from_spectral(hat);
}

namespace {

Field apply_derivative(const Field& f, const std::vector<double>& symbol) {
    auto hat = to_spectral(f);
    auto& c = hat.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = std::complex<double>(-symbol[i] * c[i].imag(), symbol[i] * c[i].real());
    return from_spectral(hat);
}

} // namespace

Field gradient_x(const Field& f) { return apply_derivative(f, gradient_symbols_x(f.grid())); }
Field gradient_y(const Field& f) { return apply_derivative(f, gradient_symbols_y(f.grid())); }

double integral(const Field& f) {
    double sum = 0.0;
    for (double v : f.values())
        sum += v;
    return sum * f.grid().cell_area();
}

double mean(const Field& f) {
    return integral(f) / f.grid().area();
}

double l2_inner(const Field& f, const Field& g) {
    require_same_grid(f.grid(), g.grid());
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        sum += f[i] * g[i];
    return sum * f.grid().cell_area();
}

double l2_norm(const Field& f) {
    return std::sqrt(l2_inner(f, f));
}

double hminus1_norm(const Field& f) {
    const double sq = l2_inner(f, neg_inv_laplacian(f));
    return std::sqrt(std::max(0.0, sq));
}

} // namespace tfch

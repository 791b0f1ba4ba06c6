#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tfch {

/// Uniform periodic rectangle [0, lx) x [0, ly) sampled on nx x ny nodes.
/// Both node counts must be even.
struct Grid {
    int nx = 0, ny = 0;
    double lx = 1.0, ly = 1.0;

    void validate() const;
    bool operator==(const Grid&) const = default;

    double hx() const { return lx / nx; }
    double hy() const { return ly / ny; }
    double x(int j) const { return j * hx(); }
    double y(int k) const { return k * hy(); }
    double cell_area() const { return lx * ly / (static_cast<double>(nx) * ny); }
    double area() const { return lx * ly; }
    std::size_t node_count() const { return static_cast<std::size_t>(nx) * ny; }
    /// Stored modes of a real transform: nx rows by ny/2+1 columns.
    std::size_t spectral_size() const { return static_cast<std::size_t>(nx) * (ny / 2 + 1); }
};

/// Real scalar samples phi(x_j, y_k), row-major with j slow.
class Field {
public:
    Field() = default;
    explicit Field(const Grid& grid, double fill = 0.0);
    Field(const Grid& grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& at(int j, int k) { return values_[static_cast<std::size_t>(j) * grid_.ny + k]; }
    double at(int j, int k) const { return values_[static_cast<std::size_t>(j) * grid_.ny + k]; }

private:
    Grid grid_;
    std::vector<double> values_;
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& f);

/// Normalized Fourier coefficients of a real field on the half-plane layout
/// of a real-to-complex transform: row ix = 0..nx-1 holds signed x-mode
/// ix <= nx/2 ? ix : ix - nx, column iy = 0..ny/2 the non-negative y-modes.
/// Conjugate symmetry supplies the missing half. coeffs()[0] is the field mean.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(const Grid& grid, std::vector<std::complex<double>> coeffs);

    const Grid& grid() const { return grid_; }
    std::vector<std::complex<double>>& coeffs() { return coeffs_; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

private:
    Grid grid_;
    std::vector<std::complex<double>> coeffs_;
};

SpectralField to_spectral(const Field& f);
Field from_spectral(const SpectralField& f);

/// Low-level transforms into caller-owned buffers (used by the time stepper
/// to avoid reallocating per iteration). Sizes must match the grid exactly.
void transform_forward(const Grid& grid, std::span<const double> values,
                       std::span<std::complex<double>> coeffs);
void transform_inverse(const Grid& grid, std::span<const std::complex<double>> coeffs,
                       std::span<double> values);

/// Angular wavenumber tables per stored mode.
/// laplacian_symbols: kappa_x^2 + kappa_y^2 with the Nyquist mode retained.
/// gradient_symbols_*: first-derivative wavenumbers, zero at the Nyquist
/// mode of the respective axis.
/// parseval_weights: conjugate multiplicity (1 on self-conjugate columns, else 2).
std::vector<double> laplacian_symbols(const Grid& grid);
std::vector<double> gradient_symbols_x(const Grid& grid);
std::vector<double> gradient_symbols_y(const Grid& grid);
std::vector<double> parseval_weights(const Grid& grid);

/// Spectral Laplacian: multiplier -(kappa_x^2 + kappa_y^2) per mode.
Field laplacian(const Field& f);

/// Zero-mean solution of -Laplace(phi) = f; requires mean(f) = 0 to
/// 1e-12 * ||f||, otherwise the input lost mass upstream and we refuse it.
Field neg_inv_laplacian(const Field& f);

Field gradient_x(const Field& f);
Field gradient_y(const Field& f);

double integral(const Field& f); // node sum times cell area
double mean(const Field& f);
double l2_inner(const Field& f, const Field& g);
double l2_norm(const Field& f);
/// || (-Laplace)^{-1/2} f ||; requires mean(f) ~ 0 like neg_inv_laplacian.
double hminus1_norm(const Field& f);

} // namespace tfch

#include "tfch/diagnostics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace tfch {

double free_energy(const Field& f, double epsilon) {
    const Grid& grid = f.grid();
    double bulk = 0.0;
    for (double v : f.values()) {
        const double q = v * v - 1.0;
        bulk += 0.25 * q * q;
    }
    bulk *= grid.cell_area();

    std::vector<std::complex<double>> hat(grid.spectral_size());
    transform_forward(grid, f.values(), hat);
    const auto gx = gradient_symbols_x(grid);
    const auto gy = gradient_symbols_y(grid);
    const auto w = parseval_weights(grid);
    double grad_sq = 0.0;
    for (std::size_t i = 0; i < hat.size(); ++i)
        grad_sq += w[i] * (gx[i] * gx[i] + gy[i] * gy[i]) * std::norm(hat[i]);
    grad_sq *= grid.area();

    return 0.5 * epsilon * epsilon * grad_sq + bulk;
}

double l2_error(const Field& f, const Field& ref) {
    if (!(f.grid() == ref.grid()))
        throw std::invalid_argument("l2_error: fields live on different grids");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double d = f[i] - ref[i];
        sum += d * d;
    }
    return std::sqrt(sum * f.grid().cell_area());
}

std::vector<double> estimate_orders(const std::vector<double>& errors, double factor) {
    if (errors.size() < 2)
        throw std::invalid_argument("estimate_orders: need at least two errors");
    if (!(factor > 1.0))
        throw std::invalid_argument("estimate_orders: refinement factor must exceed 1");
    for (double e : errors)
        if (!(e > 0.0))
            throw std::invalid_argument("estimate_orders: errors must be positive");
    std::vector<double> orders(errors.size() - 1);
    for (std::size_t j = 1; j < errors.size(); ++j)
        orders[j - 1] = std::log(errors[j - 1] / errors[j]) / std::log(factor);
    return orders;
}

double mass_drift(const Field& f, const Field& initial) {
    return std::abs(integral(f) - integral(initial));
}

} // namespace tfch

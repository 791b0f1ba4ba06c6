#include "tfch/initial_conditions.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace tfch {

Field ic_star(const Grid& grid, double epsilon, double x0, double y0) {
    Field f(grid);
    const double scale = 1.0 / (std::sqrt(2.0) * epsilon);
    for (int j = 0; j < grid.nx; ++j) {
        const double dx = grid.x(j) - x0;
        for (int k = 0; k < grid.ny; ++k) {
            const double dy = grid.y(k) - y0;
            const double r = std::sqrt(dx * dx + dy * dy);
            const double theta = std::atan2(dy, dx); // atan2(0,0) = 0 at the center
            const double arg = r - 0.25 - (1.0 + std::cos(4.0 * theta)) / 16.0;
            f.at(j, k) = std::tanh(scale * arg);
        }
    }
    return f;
}

Field ic_uniform_random(const Grid& grid, double mean, double amplitude, std::uint64_t seed) {
    if (amplitude < 0.0)
        throw std::invalid_argument("ic_uniform_random: amplitude must be non-negative");
    Field f(grid);
    NoiseGenerator noise(seed);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = mean + amplitude * noise.next();
    return f;
}

namespace {

void warn_domain(const Grid& grid, const char* name) {
    if (std::abs(grid.lx - 2.0) > 1e-12 || std::abs(grid.ly - 1.0) > 1e-12)
        std::cerr << "warning: " << name << " profile is meant for the [0,2]x[0,1] domain, got ["
                  << grid.lx << "]x[" << grid.ly << "]\n";
}

} // namespace

Field ic_wedge(const Grid& grid, std::uint64_t seed) {
    warn_domain(grid, "wedge");
    Field f(grid);
    NoiseGenerator noise(seed);
    for (int j = 0; j < grid.nx; ++j) {
        const double base = 0.5 * std::abs(grid.x(j) - 1.0);
        for (int k = 0; k < grid.ny; ++k)
            f.at(j, k) = base + 1e-3 * noise.next();
    }
    return f;
}

Field ic_thinfilm(const Grid& grid, double r0, std::uint64_t seed) {
    warn_domain(grid, "thin-film");
    Field f(grid);
    NoiseGenerator noise(seed);
    const double lx = grid.lx;
    for (int j = 0; j < grid.nx; ++j) {
        const double x = grid.x(j);
        for (int k = 0; k < grid.ny; ++k) {
            const double wobble = 0.5 * r0 * std::sin(10.0 * std::numbers::pi * grid.y(k));
            if (std::abs(x - 5.0 * lx / 6.0 + wobble) < r0)
                f.at(j, k) = 1e-3 * noise.next();
            else if (std::abs(x - 3.0 * lx / 6.0 + wobble) < r0)
                f.at(j, k) = -0.1 + 1e-3 * noise.next();
            else if (std::abs(x - lx / 6.0 + wobble) < r0)
                f.at(j, k) = -0.2 + 1e-3 * noise.next();
            else
                f.at(j, k) = -1.0;
        }
    }
    return f;
}

} // namespace tfch

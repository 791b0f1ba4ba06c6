#pragma once

#include <cstdint>
#include <random>

#include "tfch/spectral_field.hpp"

namespace tfch {

/// Deterministic stream of uniform [-1, 1] doubles. The mapping from raw
/// engine output to doubles is fixed here (not delegated to a distribution),
/// so a seed reproduces the same field bitwise on every build.
class NoiseGenerator {
public:
    explicit NoiseGenerator(std::uint64_t seed) : engine_(seed) {}

    double next() {
        return 2.0 * ((engine_() >> 11) * 0x1.0p-53) - 1.0;
    }

private:
    std::mt19937_64 engine_;
};

/// tanh profile of a circle of radius 0.25 around (x0, y0), perturbed by a
/// four-fold cosine of the polar angle. The center node uses angle 0.
Field ic_star(const Grid& grid, double epsilon, double x0, double y0);

/// mean + amplitude * u with u i.i.d. uniform on [-1, 1], filled in row-major
/// node order.
Field ic_uniform_random(const Grid& grid, double mean, double amplitude, std::uint64_t seed);

/// (1/2)|x - 1| + 1e-3 u on [0, 2] x [0, 1] (warns on other domains).
Field ic_wedge(const Grid& grid, std::uint64_t seed);

/// Three sinusoidally wobbled film columns centered at x = 5Lx/6, 3Lx/6,
/// Lx/6 with mean compositions 0, -0.1, -0.2 plus 1e-3 noise, embedded in a
/// pure phi = -1 background. Column half-width r0.
Field ic_thinfilm(const Grid& grid, double r0, std::uint64_t seed);

} // namespace tfch

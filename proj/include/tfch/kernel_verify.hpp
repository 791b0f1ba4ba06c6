#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "tfch/time_mesh.hpp"

namespace tfch::verify {

/// Tanh-sinh (double exponential) quadrature over [a, b]. Robust against
/// integrable endpoint singularities; singular endpoints should be placed
/// at a = 0 so node offsets are representable exactly.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

/// a^n_{n-k} by direct 1-D quadrature of the defining integral; never uses
/// the antiderivative the production path is built on.
double l1_coeff_quadrature(const TimeMesh& mesh, int n, int k, double alpha);

/// abar^n_{n-k} by nested 2-D quadrature of the defining double integral.
double l1plus_coeff_quadrature(const TimeMesh& mesh, int n, int k, double alpha);

/// a^n_{n-k} on a uniform mesh from the printed uniform-mesh closed form
/// tau^(-alpha) [omega_{2-alpha}(n-k+1) - omega_{2-alpha}(n-k)].
double l1_coeff_uniform_reference(double tau, int n, int k, double alpha);

/// Random mesh with the given number of steps; the first step is
/// log-uniform in [1e-3, 1] and each subsequent step multiplies by a
/// log-uniform factor in [ratio_lo, ratio_hi].
TimeMesh random_mesh(std::mt19937_64& rng, int steps, double ratio_lo, double ratio_hi);

/// Uniform double in [lo, hi] with a fixed engine-to-double mapping.
double uniform_sample(std::mt19937_64& rng, double lo, double hi);

struct KernelCheckReport {
    int samples = 0;
    int coefficients = 0;
    double max_rel_err_l1plus = 0.0;    // closed form vs. 2-D quadrature
    double max_rel_err_l1_uniform = 0.0; // uniform L1 vs. printed closed form
    double min_coefficient = 0.0;
    bool monotonicity_ok = true;        // L1 rows increase toward the current step
    bool pass = false;
    std::string summary() const;
};

/// Cross-checks the closed-form kernel rows against the quadrature oracle on
/// random meshes (step ratios within [0.1, 10], alpha in {0.1, ..., 0.9}).
KernelCheckReport run_kernel_checks(int samples, std::uint64_t seed, int max_steps = 30,
                                    double tol_l1plus = 1e-10, double tol_l1_uniform = 1e-13);

} // namespace tfch::verify

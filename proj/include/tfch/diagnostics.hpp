#pragma once

#include <vector>

#include "tfch/spectral_field.hpp"

namespace tfch {

/// One row of the per-step log.
struct DiagnosticsRecord {
    int n = 0;
    double t = 0.0;
    double dt = 0.0;
    double energy = 0.0;
    double mass = 0.0;       // integral of phi
    double mass_drift = 0.0; // |mass - mass at step 0|
    int picard_iters = 0;
};

/// Discrete free energy
///   E(phi) = int (eps^2/2) |grad phi|^2 + (1/4) (phi^2 - 1)^2 dx,
/// bulk part by node-sum quadrature, gradient part by Parseval with the
/// same Nyquist-free first-derivative symbols as gradient_x/gradient_y.
double free_energy(const Field& f, double epsilon);

/// Discrete l2 norm of f - ref (same grid required).
double l2_error(const Field& f, const Field& ref);

/// Observed convergence orders log(e_{j-1}/e_j) / log(factor) from errors at
/// step sizes shrinking by the given factor.
std::vector<double> estimate_orders(const std::vector<double>& errors, double factor);

double mass_drift(const Field& f, const Field& initial);

} // namespace tfch

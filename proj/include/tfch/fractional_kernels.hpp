#pragma once

#include <span>
#include <vector>

#include "tfch/time_mesh.hpp"

namespace tfch {

/// Weakly singular weight omega_beta(t) = t^(beta-1) / Gamma(beta).
///
/// Throws for t = 0 when beta <= 1 (the value is singular or undefined there);
/// returns 0 at t = 0 for beta > 1.
double omega(double beta, double t);

/// One row of discrete-Caputo convolution coefficients for step n.
///
/// coeffs[k-1] holds the weight of the increment over (t_{k-1}, t_k],
/// k = 1..n, i.e. a^n_{n-k} (L1) or abar^n_{n-k} (L1+). All coefficients
/// are strictly positive on any admissible mesh. The time prefix
/// t_0..t_n the row was built from is retained so that rows from
/// different meshes cannot be combined silently.
struct KernelRow {
    double alpha = 0.0;
    int n = 0;
    std::vector<double> coeffs;
    std::vector<double> times;

    double a0() const { return coeffs.back(); } // weight of the current increment
};

/// L1 coefficients: interval averages of omega_{1-alpha}(t_n - s),
///   a^n_{n-k} = (omega_{2-alpha}(t_n - t_{k-1}) - omega_{2-alpha}(t_n - t_k)) / tau_k.
KernelRow l1_row(const TimeMesh& mesh, int n, double alpha);

/// L1+ coefficients: the double interval average
///   abar^n_{n-k} = 1/(tau_k tau_n) * int_{t_{n-1}}^{t_n} int_{t_{k-1}}^{min(t,t_k)}
///                  omega_{1-alpha}(t - s) ds dt,
/// evaluated in closed form through the antiderivative omega_{3-alpha}.
/// Differences of nearby arguments are factored through expm1/log1p, and the
/// doubly-short-step regime falls back to a Gauss rule on the smooth integrand,
/// so strongly graded meshes do not lose precision to cancellation.
KernelRow l1plus_row(const TimeMesh& mesh, int n, double alpha);

/// Discrete fractional derivative value: sum_k coeffs[k-1] * increments[k-1].
double apply_row(const KernelRow& row, std::span<const double> increments);

/// Quadratic form sum_{k=1}^n w_k sum_{j=1}^k abar^k_{k-j} w_j with rows built
/// per step 1..n on a common mesh. Positive semidefinite for L1+ rows on any
/// mesh; used by the verification suites.
double psd_quadratic_form(std::span<const KernelRow> rows, std::span<const double> w);

} // namespace tfch

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "tfch/fractional_kernels.hpp"
#include "tfch/spectral_field.hpp"
#include "tfch/time_mesh.hpp"

namespace tfch {

struct PhysicalParams {
    double alpha = 0.5;   // fractional order, in (0,1)
    double mobility = 1.0;
    double epsilon = 0.01;

    void validate() const;
};

/// Explicit stabilization used inside the midpoint chemical potential:
/// standard extrapolation 3/2 phi^{n-1} - 1/2 phi^{n-2}, or the
/// ratio-corrected form phi^{n-1} + (phi^{n-1} - phi^{n-2}) / (2 rho_{n-1})
/// which restores second order on non-uniform steps but requires
/// rho_{n-1} = tau_{n-1}/tau_n >= 0.5 wherever it is applied.
enum class ExtrapolationVariant { standard, ratio_corrected };

struct NonlinearSolveConfig {
    double tol = 1e-10;   // relative residual / increment tolerance
    int max_iters = 500;
    double damping = 1.0; // Picard blend factor theta in (0,1]

    void validate() const;
};

/// Nonlinear solve ran out of iterations; retry with a smaller step.
struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterates left the representable range; the trajectory is lost.
struct NumericalBlowup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ratio-corrected extrapolation asked for with rho_{n-1} < 0.5.
struct RatioConstraintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-step precomputed data for the Picard fixed-point updates.
struct PicardWorkspace {
    double tau = 0.0;
    double a0 = 0.0;       // abar^n_0
    KernelRow row;
    Field history;         // H = sum_{k<n} abar^n_{n-k} (phi^k - phi^{k-1})
    double history_l2 = 0.0;
    Field explicit_part;   // -(eps^2/2) lap(phi^{n-1}) - extrapolant
    std::vector<std::complex<double>> rhs_fixed; // F[a0 phi^{n-1} - H]
    std::vector<double> k2;
    std::vector<double> denom;  // a0 + M (eps^2/2) k2^2
    std::vector<double> pweight;
};

/// Trajectory state of the convex-splitting scheme: the two most recent
/// fields, the full increment history feeding the fractional memory term,
/// and the time mesh grown so far. Confined to one simulation thread.
class SolverState {
public:
    SolverState(Field initial, PhysicalParams params,
                ExtrapolationVariant variant = ExtrapolationVariant::standard,
                NonlinearSolveConfig solve = {});

    int step_index() const { return static_cast<int>(history_.size()); }
    double time() const { return mesh_.final_time(); }
    const TimeMesh& mesh() const { return mesh_; }
    const Field& current() const { return current_; }   // phi^n
    const Field& previous() const { return previous_; } // phi^{n-1} (phi^{-1} = phi^0)
    const std::vector<Field>& history() const { return history_; }
    const PhysicalParams& params() const { return params_; }
    ExtrapolationVariant variant() const { return variant_; }
    const NonlinearSolveConfig& solve_config() const { return solve_; }
    double initial_mass() const { return initial_mass_; }
    int last_picard_iters() const { return last_iters_; }

    /// Stabilization field for the pending step of size tau_next.
    Field extrapolant(double tau_next) const;

    /// mu^{n-1/2} with phi^n taken as the given candidate.
    Field chemical_potential(const Field& candidate, double tau_next) const;

    /// Known part of the fractional derivative at the pending step.
    Field history_term(const KernelRow& row) const;

    PicardWorkspace make_workspace(double tau_next) const;

    /// One damped fixed-point update of the candidate.
    Field picard_iterate(const Field& candidate, const PicardWorkspace& ws) const;

    /// Advance one step of size tau_next; state is untouched on failure.
    void advance(double tau_next);

private:
    void solve_spectral(std::span<const std::complex<double>> nonlin_hat,
                        const PicardWorkspace& ws,
                        std::span<std::complex<double>> out_hat) const;

    PhysicalParams params_;
    ExtrapolationVariant variant_;
    NonlinearSolveConfig solve_;
    TimeMesh mesh_;
    Field current_;
    Field previous_;
    std::vector<Field> history_;
    double initial_mass_ = 0.0;
    int last_iters_ = 0;
};

} // namespace tfch

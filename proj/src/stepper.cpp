#include "tfch/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tfch {

void PhysicalParams::validate() const {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("physical params: alpha must lie in (0, 1)");
    if (!(mobility > 0.0))
        throw std::invalid_argument("physical params: mobility must be positive");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("physical params: epsilon must be positive");
}

void NonlinearSolveConfig::validate() const {
    if (!(tol > 0.0))
        throw std::invalid_argument("solve config: tol must be positive");
    if (max_iters < 1)
        throw std::invalid_argument("solve config: max_iters must be at least 1");
    if (!(damping > 0.0) || damping > 1.0)
        throw std::invalid_argument("solve config: damping must lie in (0, 1]");
}

SolverState::SolverState(Field initial, PhysicalParams params, ExtrapolationVariant variant,
                         NonlinearSolveConfig solve)
    : params_(params), variant_(variant), solve_(solve),
      current_(std::move(initial)), previous_(current_) {
    params_.validate();
    solve_.validate();
    current_.grid().validate();
    initial_mass_ = integral(current_);
}

namespace {

// (1/4) (phi^{n-1} + v) (v^2 + (phi^{n-1})^2), the implicitly treated
// convex part of the chemical potential.
void convex_term(const Field& prev, const Field& v, Field& out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double p = prev[i], c = v[i];
        out[i] = 0.25 * (p + c) * (c * c + p * p);
    }
}

} // namespace

Field SolverState::extrapolant(double tau_next) const {
    if (!(tau_next > 0.0) || !std::isfinite(tau_next))
        throw std::invalid_argument("extrapolant: step size must be positive");
    const int n = step_index() + 1; // pending step
    Field out(current_.grid());
    if (variant_ == ExtrapolationVariant::standard) {
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = 1.5 * current_[i] - 0.5 * previous_[i];
        return out;
    }
    if (n == 1)
        return current_; // increment over the ghost step is zero
    const double rho = mesh_.step(n - 1) / tau_next;
    if (rho < 0.5)
        throw RatioConstraintError("ratio-corrected extrapolation needs tau_n <= 2 tau_{n-1}");
    const double w = 0.5 / rho;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = current_[i] + w * (current_[i] - previous_[i]);
    return out;
}

Field SolverState::chemical_potential(const Field& candidate, double tau_next) const {
    if (!(candidate.grid() == current_.grid()))
        throw std::invalid_argument("chemical_potential: candidate grid mismatch");
    const double eps_half = 0.5 * params_.epsilon * params_.epsilon;
    const Field lap_prev = laplacian(current_);
    const Field lap_cand = laplacian(candidate);
    const Field stab = extrapolant(tau_next);
    Field mu(current_.grid());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double p = current_[i], c = candidate[i];
        mu[i] = -eps_half * (lap_prev[i] + lap_cand[i]) + 0.25 * (p + c) * (c * c + p * p) - stab[i];
    }
    return mu;
}

Field SolverState::history_term(const KernelRow& row) const {
    const int n = step_index() + 1;
    if (row.n != n)
        throw std::invalid_argument("history_term: row not built for the pending step");
    for (int k = 0; k < n; ++k)
        if (row.times[k] != mesh_.times()[k])
            throw std::invalid_argument("history_term: row built on a different mesh");
    Field h(current_.grid());
    for (int k = 1; k <= n - 1; ++k) {
        const double c = row.coeffs[k - 1];
        const Field& inc = history_[k - 1];
        for (std::size_t i = 0; i < h.size(); ++i)
            h[i] += c * inc[i];
    }
    return h;
}

PicardWorkspace SolverState::make_workspace(double tau_next) const {
    if (!(tau_next > 0.0) || !std::isfinite(tau_next))
        throw std::invalid_argument("step size must be positive and finite");
    const Grid& grid = current_.grid();
    const int n = step_index() + 1;

    PicardWorkspace ws;
    ws.tau = tau_next;
    TimeMesh pending = mesh_;
    pending.append(tau_next);
    ws.row = l1plus_row(pending, n, params_.alpha);
    ws.a0 = ws.row.a0();
    ws.history = history_term(ws.row);
    ws.history_l2 = l2_norm(ws.history);

    const Field stab = extrapolant(tau_next);
    const Field lap_prev = laplacian(current_);
    const double eps_half = 0.5 * params_.epsilon * params_.epsilon;
    ws.explicit_part = Field(grid);
    for (std::size_t i = 0; i < ws.explicit_part.size(); ++i)
        ws.explicit_part[i] = -eps_half * lap_prev[i] - stab[i];

    Field rhs(grid);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = ws.a0 * current_[i] - ws.history[i];
    ws.rhs_fixed.resize(grid.spectral_size());
    transform_forward(grid, rhs.values(), ws.rhs_fixed);

    ws.k2 = laplacian_symbols(grid);
    ws.pweight = parseval_weights(grid);
    ws.denom.resize(ws.k2.size());
    const double m_eps = params_.mobility * eps_half;
    for (std::size_t i = 0; i < ws.denom.size(); ++i)
        ws.denom[i] = ws.a0 + m_eps * ws.k2[i] * ws.k2[i];
    return ws;
}

void SolverState::solve_spectral(std::span<const std::complex<double>> nonlin_hat,
                                 const PicardWorkspace& ws,
                                 std::span<std::complex<double>> out_hat) const {
    const double m = params_.mobility;
    for (std::size_t i = 0; i < out_hat.size(); ++i)
        out_hat[i] = (ws.rhs_fixed[i] - m * ws.k2[i] * nonlin_hat[i]) / ws.denom[i];
}

Field SolverState::picard_iterate(const Field& candidate, const PicardWorkspace& ws) const {
    const Grid& grid = current_.grid();
    if (!(candidate.grid() == grid))
        throw std::invalid_argument("picard_iterate: candidate grid mismatch");
    Field w(grid);
    convex_term(current_, candidate, w);
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] += ws.explicit_part[i];
    std::vector<std::complex<double>> w_hat(grid.spectral_size());
    transform_forward(grid, w.values(), w_hat);
    std::vector<std::complex<double>> v_hat(grid.spectral_size());
    solve_spectral(w_hat, ws, v_hat);
    Field v(grid);
    transform_inverse(grid, v_hat, v.values());
    const double theta = solve_.damping;
    if (theta < 1.0)
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = theta * v[i] + (1.0 - theta) * candidate[i];
    return v;
}

void SolverState::advance(double tau_next) {
    const Grid& grid = current_.grid();
    const PicardWorkspace ws = make_workspace(tau_next);
    const double theta = solve_.damping;
    const double m = params_.mobility;
    const double area = grid.area();

    // initial guess: the extrapolant, clamped against overshoot
    Field v = extrapolant(tau_next);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::clamp(v[i], -1.5, 1.5);

    const std::size_t ns = grid.spectral_size();
    std::vector<std::complex<double>> v_hat(ns), v_new_hat(ns), w_hat(ns), raw_hat(ns);
    transform_forward(grid, v.values(), v_hat);

    Field w(grid), v_new(grid);
    convex_term(current_, v, w);
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] += ws.explicit_part[i];
    transform_forward(grid, w.values(), w_hat);

    double prev_inc = std::numeric_limits<double>::infinity();
    int growth_streak = 0;

    for (int it = 1; it <= solve_.max_iters; ++it) {
        solve_spectral(w_hat, ws, raw_hat);
        for (std::size_t i = 0; i < ns; ++i)
            v_new_hat[i] = theta * raw_hat[i] + (1.0 - theta) * v_hat[i];
        transform_inverse(grid, v_new_hat, v_new.values());

        double inc_sq = 0.0, ref_sq = 0.0, new_sq = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double d = v_new[i] - v[i];
            inc_sq += d * d;
            ref_sq += v[i] * v[i];
            new_sq += v_new[i] * v_new[i];
        }
        const double cell = grid.cell_area();
        const double inc = std::sqrt(inc_sq * cell);
        const double ref = std::sqrt(ref_sq * cell);
        const double v_new_l2 = std::sqrt(new_sq * cell);
        if (!std::isfinite(v_new_l2))
            throw NumericalBlowup("non-finite iterate in nonlinear solve");

        convex_term(current_, v_new, w);
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] += ws.explicit_part[i];
        transform_forward(grid, w.values(), w_hat);

        // residual of the full step equation at v_new, via Parseval
        double res_sq = 0.0;
        for (std::size_t i = 0; i < ns; ++i) {
            const std::complex<double> r =
                ws.denom[i] * v_new_hat[i] - ws.rhs_fixed[i] + m * ws.k2[i] * w_hat[i];
            res_sq += ws.pweight[i] * std::norm(r);
        }
        const double res = std::sqrt(res_sq * area);
        const double res_bound = solve_.tol * (ws.a0 * v_new_l2 + ws.history_l2);

        if (inc <= solve_.tol * std::max(1.0, ref) && res <= res_bound) {
            history_.push_back(v_new - current_);
            previous_ = std::move(current_);
            current_ = std::move(v_new);
            mesh_.append(tau_next);
            last_iters_ = it;
            return;
        }

        // a steadily growing increment will not come back; fail early so the
        // caller can retry with a smaller step
        growth_streak = inc > prev_inc ? growth_streak + 1 : 0;
        if (growth_streak >= 8)
            throw StepFailure("nonlinear solve diverging");
        prev_inc = inc;

        v = v_new;
        std::swap(v_hat, v_new_hat);
    }
    throw StepFailure("nonlinear solve did not converge in max_iters");
}

} // namespace tfch
